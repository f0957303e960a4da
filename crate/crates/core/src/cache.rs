//! On-disk store of computed polynomials: one JSON file per family and `n`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Family, IntPolynomial, Method};

pub const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    format_version: u32,
    family: String,
    n: usize,
    variable: String,
    coeffs: serde_json::Value,
}

/// What happened when a fresh value was reconciled with the store.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    /// Nothing usable was stored; the fresh value was written.
    Stored,
    /// The stored value equals the fresh one.
    Matched,
    /// The stored value differed and has been overwritten.
    Replaced { stale: IntPolynomial },
}

#[derive(Clone, Debug)]
pub struct PolyCache {
    dir: PathBuf,
}

fn io_err(path: &Path, e: io::Error) -> Error {
    Error::Domain(format!("cache {}: {e}", path.display()))
}

impl PolyCache {
    /// Opens `dir`, creating it if needed.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        Ok(PolyCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, family: Family, n: usize) -> PathBuf {
        self.dir.join(format!("{}_{n}.json", family.name()))
    }

    /// The stored polynomial, or `None` when the file is absent or written
    /// under another format version. A malformed file is an error.
    pub fn load(&self, family: Family, n: usize) -> Result<Option<IntPolynomial>> {
        let path = self.path_for(family, n);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path, e)),
        };
        let entry: Entry = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("cache {}: {e}", path.display())))?;
        if entry.format_version != CACHE_FORMAT_VERSION {
            return Ok(None);
        }
        if entry.family != family.name() || entry.n != n {
            return Err(Error::Parse(format!("cache {} holds {} n = {}", path.display(), entry.family, entry.n)));
        }
        IntPolynomial::from_json(&entry.coeffs).map(Some)
    }

    pub fn store(&self, family: Family, n: usize, p: &IntPolynomial) -> Result<()> {
        let entry = Entry {
            format_version: CACHE_FORMAT_VERSION,
            family: family.name().to_string(),
            n,
            variable: family.variable().to_string(),
            coeffs: p.to_json(),
        };
        let path = self.path_for(family, n);
        let text = serde_json::to_string_pretty(&entry).expect("cache entries serialize");
        fs::write(&path, text + "\n").map_err(|e| io_err(&path, e))
    }

    /// Returns the stored value, computing and storing it on a miss.
    pub fn get_or_compute(&self, family: Family, n: usize, method: Method) -> Result<IntPolynomial> {
        if let Some(p) = self.load(family, n)? {
            return Ok(p);
        }
        let p = family.poly(n, method)?;
        self.store(family, n, &p)?;
        Ok(p)
    }

    /// Compares the store against a freshly computed value and leaves the
    /// fresh value on disk.
    pub fn reconcile(&self, family: Family, n: usize, fresh: &IntPolynomial) -> Result<CacheOutcome> {
        let outcome = match self.load(family, n) {
            Ok(Some(p)) if p == *fresh => return Ok(CacheOutcome::Matched),
            Ok(Some(stale)) => CacheOutcome::Replaced { stale },
            Ok(None) | Err(Error::Parse(_)) => CacheOutcome::Stored,
            Err(e) => return Err(e),
        };
        self.store(family, n, fresh)?;
        Ok(outcome)
    }
}
