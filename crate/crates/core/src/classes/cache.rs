use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::classes::ClassSpec;
use crate::error::Result;

/// On-disk memo of per-rank member counts, keyed by the spec hash.
///
/// Layout: `<dir>/<spec hash>/spec.txt` holds the canonical spec text and
/// `<dir>/<spec hash>/count-<rank>` the count. Files are written to a
/// temporary name and renamed into place, so readers never see partial
/// entries and concurrent writers of the same entry write identical bytes.
#[derive(Clone, Debug)]
pub struct ClassCache {
    dir: PathBuf,
}

impl ClassCache {
    pub const ENV_VAR: &'static str = "SUBPAT_CACHE";
    pub const DEFAULT_DIR: &'static str = ".subpat-cache";

    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ClassCache { dir: dir.into() }
    }

    /// Directory from `SUBPAT_CACHE`, else `./.subpat-cache`.
    pub fn from_env() -> Self {
        match std::env::var_os(Self::ENV_VAR) {
            Some(d) if !d.is_empty() => Self::new(d),
            _ => Self::new(Self::DEFAULT_DIR),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn entry_dir(&self, spec: &ClassSpec) -> PathBuf {
        self.dir.join(spec.spec_hash())
    }

    pub fn get_count(&self, spec: &ClassSpec, rank: usize) -> Result<Option<u64>> {
        let path = self.entry_dir(spec).join(format!("count-{rank}"));
        match fs::read_to_string(&path) {
            Ok(s) => Ok(s.trim().parse().ok()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn put_count(&self, spec: &ClassSpec, rank: usize, count: u64) -> Result<()> {
        let dir = self.entry_dir(spec);
        fs::create_dir_all(&dir)?;
        let spec_file = dir.join("spec.txt");
        if !spec_file.exists() {
            write_atomic(&spec_file, spec.canonical_text().as_bytes())?;
        }
        write_atomic(&dir.join(format!("count-{rank}")), format!("{count}\n").as_bytes())
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
