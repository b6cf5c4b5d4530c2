//! Append-only result cache, one line per modulus:
//! `m,best_size,exact,upper_bound,witness` with the witness dash-separated.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::SearchResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CachedResult {
    pub m: u64,
    pub best_size: usize,
    pub exact: bool,
    pub upper_bound: usize,
    pub witness: Vec<u64>,
}

impl CachedResult {
    pub fn to_line(&self) -> String {
        let witness: Vec<String> = self.witness.iter().map(u64::to_string).collect();
        format!(
            "{},{},{},{},{}",
            self.m,
            self.best_size,
            self.exact,
            self.upper_bound,
            witness.join("-")
        )
    }

    pub fn parse(line: &str, lineno: usize) -> Result<Self> {
        let bad = |reason: &str| Error::Cache {
            line: lineno,
            reason: reason.to_string(),
        };
        let fields: Vec<&str> = line.trim().split(',').collect();
        let [m, size, exact, ub, witness] = fields.as_slice() else {
            return Err(bad("expected 5 fields"));
        };
        let witness: Vec<u64> = if witness.is_empty() {
            Vec::new()
        } else {
            witness
                .split('-')
                .map(|w| w.parse().map_err(|_| bad("bad witness element")))
                .collect::<Result<_>>()?
        };
        let r = Self {
            m: m.parse().map_err(|_| bad("bad modulus"))?,
            best_size: size.parse().map_err(|_| bad("bad size"))?,
            exact: exact.parse().map_err(|_| bad("bad exact flag"))?,
            upper_bound: ub.parse().map_err(|_| bad("bad upper bound"))?,
            witness,
        };
        if r.witness.len() != r.best_size {
            return Err(bad("witness length differs from size"));
        }
        Ok(r)
    }

    pub fn to_result(&self) -> SearchResult {
        SearchResult {
            m: self.m,
            best_size: self.best_size,
            witness: self.witness.clone(),
            lower_bound: self.best_size,
            upper_bound: self.upper_bound,
            exact: self.exact,
            nodes_explored: 0,
            elapsed_secs: 0.0,
            conventional: self.m == 1,
        }
    }
}

impl From<&SearchResult> for CachedResult {
    fn from(r: &SearchResult) -> Self {
        Self {
            m: r.m,
            best_size: r.best_size,
            exact: r.exact,
            upper_bound: r.upper_bound,
            witness: r.witness.clone(),
        }
    }
}

/// Cache stored as `<dir>/max_avoiding.csv`. Later lines win.
#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    entries: BTreeMap<u64, CachedResult>,
}

impl ResultCache {
    pub const FILE_NAME: &'static str = "max_avoiding.csv";
    pub const ENV_VAR: &'static str = "SQAVOID_CACHE_DIR";

    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let path = dir.join(Self::FILE_NAME);
        let mut entries = BTreeMap::new();
        if path.exists() {
            for (i, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let r = CachedResult::parse(&line, i + 1)?;
                entries.insert(r.m, r);
            }
        }
        Ok(Self { path, entries })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, m: u64) -> Option<&CachedResult> {
        self.entries.get(&m)
    }

    pub fn exact(&self, m: u64) -> Option<&CachedResult> {
        self.get(m).filter(|r| r.exact)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn append(&mut self, r: &SearchResult) -> Result<()> {
        let entry = CachedResult::from(r);
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(file, "{}", entry.to_line())?;
        self.entries.insert(entry.m, entry);
        Ok(())
    }
}
