use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "subpat", version, about = "Submatrix-avoiding classes of permutations and polyominoes")]
pub struct Cli {
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    pub shards: Option<usize>,

    /// Directory for cached class counts.
    #[arg(long, global = true, env = "SUBPAT_CACHE")]
    pub cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Bfile,
}

#[derive(Args, Debug, Clone)]
pub struct ClassArgs {
    /// perm, poly, binary or quasi.
    #[arg(long)]
    pub ground: String,

    /// Excluded matrices: a file in the matrix text format, `none`, or a
    /// comma-separated list of named matrices (`mf`, `h`, ...) and inline
    /// matrices written top row first with `/` between rows.
    #[arg(long, default_value = "none")]
    pub avoid: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    P,
    Canonical,
    Minimal,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count class members rank by rank.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        /// Largest rank (size for permutations).
        #[arg(long)]
        max: usize,
        /// Override the rank budget for this ground set.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// List the class members of one rank.
    Generate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Compute a basis of a class.
    Basis {
        #[arg(long, value_enum)]
        kind: BasisKind,
        #[command(flatten)]
        class: ClassArgs,
        /// Rank bound for the p-basis, and for checking minimal m-bases.
        #[arg(long)]
        rmax: Option<usize>,
        /// Largest candidate rank for the canonical m-basis.
        #[arg(long)]
        dmax: Option<usize>,
        /// Search bound for occurrence in class members.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run a named verification suite, or `all`.
    Verify {
        suite: String,
        /// Rank bound for polyomino suites.
        #[arg(long)]
        max_rank: Option<usize>,
        /// Size bound for permutation suites.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Compare the bordered classes built from two bases.
    Wilf {
        /// First basis: comma-separated permutations in one-line notation.
        #[arg(long, default_value = "123")]
        b1: String,
        #[arg(long, default_value = "132")]
        b2: String,
        #[arg(long, default_value_t = 7)]
        max_size: usize,
    },
}
