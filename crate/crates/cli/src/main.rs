mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use subpat_core::classes::ClassCache;
use subpat_core::Error;
use thiserror::Error as ThisError;

use args::{Cli, Command};
use commands::Ctx;

#[derive(Debug, ThisError)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

fn run(cli: Cli) -> Result<commands::Outcome, Failure> {
    if let Some(n) = cli.shards {
        if n == 0 {
            return Err(Failure::Usage("--shards must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let ctx = Ctx {
        format: cli.format,
        cache: cli.cache_dir.map(ClassCache::new),
    };
    match &cli.command {
        Command::Enumerate { class, max, budget } => commands::enumerate(&ctx, class, *max, *budget),
        Command::Generate { class, rank, budget } => commands::generate(&ctx, class, *rank, *budget),
        Command::Basis {
            kind,
            class,
            rmax,
            dmax,
            budget,
        } => commands::basis(&ctx, *kind, class, *rmax, *dmax, *budget),
        Command::Verify {
            suite,
            max_rank,
            max_size,
        } => commands::verify(&ctx, suite, *max_rank, *max_size),
        Command::Wilf { b1, b2, max_size } => commands::wilf(&ctx, b1, b2, *max_size),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("subpat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
