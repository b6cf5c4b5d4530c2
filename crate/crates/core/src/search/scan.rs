use std::ops::RangeInclusive;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numtheory::factorize;

use super::{max_avoiding_with, ResultCache, SearchOptions, SearchResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanFilter {
    pub squarefree_only: bool,
    pub odd_only: bool,
}

impl ScanFilter {
    pub fn admits(&self, m: u64) -> bool {
        if self.odd_only && m % 2 == 0 {
            return false;
        }
        !self.squarefree_only || factorize(m).is_squarefree()
    }
}

/// One entry per scanned modulus. Failures are recorded, not raised.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ScanRecord {
    Done(SearchResult),
    Failed { m: u64, error: String },
}

impl ScanRecord {
    pub fn m(&self) -> u64 {
        match self {
            ScanRecord::Done(r) => r.m,
            ScanRecord::Failed { m, .. } => *m,
        }
    }

    pub fn result(&self) -> Option<&SearchResult> {
        match self {
            ScanRecord::Done(r) => Some(r),
            ScanRecord::Failed { .. } => None,
        }
    }
}

/// Runs the search for every admitted `m` in `range` on the rayon pool.
///
/// Exact cached results are reused as is; everything else is recomputed and
/// appended to the cache. Output is sorted by `m`.
pub fn scan_table(
    range: RangeInclusive<u64>,
    opts: &SearchOptions,
    filter: ScanFilter,
    cache: Option<&mut ResultCache>,
) -> Vec<ScanRecord> {
    let moduli: Vec<u64> = range.filter(|&m| filter.admits(m)).collect();
    let cache = cache.map(Mutex::new);
    let mut records: Vec<ScanRecord> = moduli
        .into_par_iter()
        .map(|m| {
            if let Some(c) = &cache {
                if let Some(hit) = c.lock().unwrap().exact(m) {
                    return ScanRecord::Done(hit.to_result());
                }
            }
            match max_avoiding_with(m, opts) {
                Ok(r) => {
                    if let Some(c) = &cache {
                        if let Err(e) = c.lock().unwrap().append(&r) {
                            return ScanRecord::Failed { m, error: e.to_string() };
                        }
                    }
                    ScanRecord::Done(r)
                }
                Err(e) => ScanRecord::Failed { m, error: e.to_string() },
            }
        })
        .collect();
    records.sort_by_key(ScanRecord::m);
    records
}
