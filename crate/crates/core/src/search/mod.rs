//! Exact and budgeted maximum avoiding sets via maximum-clique search on the
//! avoidance graph.
//!
//! Translation invariance lets every search fix `0` in the set, so the
//! branch and bound runs on the subgraph induced by the neighbourhood of 0.

mod bnb;
mod cache;
mod reduce;
mod scan;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::bounds::bound_report;
use crate::constructions::best_construction;
use crate::error::{Error, Result};
use crate::numtheory::{factorize, Factorization};
use crate::residues::{AvoidanceGraph, ResidueSet};

pub use cache::{CachedResult, ResultCache};
pub use scan::{scan_table, ScanFilter, ScanRecord};

/// Node budget with an optional wall-clock cap. Running out of either makes
/// the result inexact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub nodes: u64,
    pub time: Option<Duration>,
}

impl Budget {
    pub fn nodes(nodes: u64) -> Self {
        Self { nodes, time: None }
    }

    pub fn with_time(mut self, time: Duration) -> Self {
        self.time = Some(time);
        self
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::nodes(10_000_000)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Start from the best explicit construction instead of a single point.
    pub seed_with_constructions: bool,
    /// Declare the result exact as soon as the witness reaches the best
    /// analytic upper bound. Off by default so that exact results never rely
    /// on the bounds they are later compared against.
    pub stop_at_analytic_bound: bool,
    /// Split the root by orbits of `x -> +-u x` (unit squares `u`) instead
    /// of by single neighbours of 0.
    pub use_multipliers: bool,
    /// Bound the answer by `m2 * U(m1)` over coprime splits `m = m1 m2`,
    /// with `U` from recursive searches on the factors.
    pub use_fibres: bool,
}

impl SearchOptions {
    pub fn new(budget: Budget) -> Self {
        Self {
            budget,
            seed_with_constructions: true,
            stop_at_analytic_bound: false,
            use_multipliers: true,
            use_fibres: true,
        }
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self::new(Budget::default())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub m: u64,
    pub best_size: usize,
    /// Sorted; always contains 0.
    pub witness: Vec<u64>,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub exact: bool,
    pub nodes_explored: u64,
    pub elapsed_secs: f64,
    /// Set for `m = 1`, where the answer 1 is a convention.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conventional: bool,
}

impl SearchResult {
    fn new(m: u64, witness: Vec<u64>, upper_bound: usize, exact: bool, nodes: u64, started: Instant) -> Self {
        let size = witness.len();
        Self {
            m,
            best_size: size,
            witness,
            lower_bound: size,
            upper_bound,
            exact,
            nodes_explored: nodes,
            elapsed_secs: started.elapsed().as_secs_f64(),
            conventional: false,
        }
    }
}

/// Largest modulus accepted by the search.
pub const MAX_MODULUS: u64 = AvoidanceGraph::LIMIT;

/// Maximum size of an avoiding set in `Z_m`.
pub fn max_avoiding(m: u64, budget: Budget) -> Result<SearchResult> {
    max_avoiding_with(m, &SearchOptions::new(budget))
}

pub fn max_avoiding_with(m: u64, opts: &SearchOptions) -> Result<SearchResult> {
    solve(m, opts, &mut HashMap::new())
}

/// `memo` holds upper bounds of moduli already searched during this call.
fn solve(m: u64, opts: &SearchOptions, memo: &mut HashMap<u64, usize>) -> Result<SearchResult> {
    let started = Instant::now();
    if opts.budget.nodes == 0 {
        return Err(Error::ZeroBudget);
    }
    if m == 0 {
        return Err(Error::ModulusTooSmall { m, min: 1 });
    }
    if m > MAX_MODULUS {
        return Err(Error::ModulusTooLarge { m, limit: MAX_MODULUS });
    }
    if m == 1 {
        let mut r = SearchResult::new(1, vec![0], 1, true, 0, started);
        r.conventional = true;
        return Ok(r);
    }
    let f = factorize(m);
    let residues = ResidueSet::enumerated(m)?;
    let graph = AvoidanceGraph::from_residues(&residues);

    let analytic = bound_report::<f64>(&f);
    // integer sizes: floor, with slack for rounding in the formulas
    let analytic_cap = (analytic.best + 1e-9).floor().max(1.0) as usize;

    let mut witness = vec![0u64];
    if opts.seed_with_constructions {
        let seed = best_construction::<f64>(&f)?;
        if seed.size() > witness.len() {
            witness = normalize(&seed.set, m);
        }
    }

    let mut nodes = 0;
    let fibre_cap = if opts.use_fibres {
        fibre_cap(&f, opts, memo, &mut nodes)?
    } else {
        m as usize
    };
    let early = if witness.len() >= fibre_cap {
        Some(fibre_cap)
    } else if opts.stop_at_analytic_bound && witness.len() >= analytic_cap {
        Some(witness.len())
    } else {
        None
    };
    if let Some(ub) = early {
        memo.insert(m, ub);
        return Ok(finish(SearchResult::new(m, witness, ub, true, nodes, started), &residues));
    }
    let outcome = branch_and_bound(m, graph.connection_set(), witness, opts);
    let witness = outcome.witness;
    let lower = witness.len();
    nodes += outcome.nodes;
    // `proved` rests on the search alone; the analytic cap only sharpens the
    // reported bound
    let proved = if outcome.complete {
        lower
    } else {
        outcome.upper_bound.min(fibre_cap).max(lower)
    };
    let upper = proved.min(analytic_cap).max(lower);
    let exact = proved == lower || (upper == lower && opts.stop_at_analytic_bound);
    memo.insert(m, proved);
    Ok(finish(SearchResult::new(m, witness, upper, exact, nodes, started), &residues))
}

/// For `m = m1 m2` with coprime factors, the points of an avoiding set with
/// the same residue mod `m2` differ by multiples of `m2`, so their residues
/// mod `m1` form an avoiding set there. Hence `|A| <= m2 U(m1)`, and
/// symmetrically. Splits are taken along single prime powers.
fn fibre_cap(f: &Factorization, opts: &SearchOptions, memo: &mut HashMap<u64, usize>, nodes: &mut u64) -> Result<usize> {
    let m = f.m();
    let mut cap = m as usize;
    if f.omega() < 2 {
        return Ok(cap);
    }
    for &(p, e) in f.factors() {
        let m2 = p.pow(e);
        let m1 = m / m2;
        for (a, b) in [(m1, m2), (m2, m1)] {
            let u = match memo.get(&a) {
                Some(&u) => u,
                None => {
                    let r = solve(a, opts, memo)?;
                    *nodes += r.nodes_explored;
                    r.upper_bound
                }
            };
            cap = cap.min(b as usize * u);
        }
    }
    Ok(cap)
}

struct Solved {
    witness: Vec<u64>,
    upper_bound: usize,
    complete: bool,
    nodes: u64,
}

/// Maximum clique through 0, starting from the clique `witness` (contains 0).
///
/// The search splits by the second vertex `r`: one subproblem per multiplier
/// orbit of neighbours of 0 (or per neighbour without multipliers), with the
/// orbits of earlier representatives removed from later candidate sets.
fn branch_and_bound(m: u64, conn: &BitSet, mut witness: Vec<u64>, opts: &SearchOptions) -> Solved {
    let neighbours: Vec<u64> = conn.iter().map(|d| d as u64).collect();
    let orbits = if opts.use_multipliers {
        reduce::multiplier_orbits(m, &neighbours)
    } else {
        (0..neighbours.len()).map(|i| vec![i]).collect()
    };
    let mut excluded = vec![false; neighbours.len()];
    let mut nodes = 0u64;
    let mut stopped = false;
    let mut upper = witness.len();
    let deadline = opts.budget.time.map(|t| Instant::now() + t);
    for orbit in &orbits {
        let r = neighbours[orbit[0]];
        let cand: Vec<u64> = neighbours
            .iter()
            .zip(&excluded)
            .filter(|&(&s, &ex)| !ex && s != r && conn.contains(((s + m - r) % m) as usize))
            .map(|(&s, _)| s)
            .collect();
        for &i in orbit {
            excluded[i] = true;
        }
        if cand.len() + 2 <= witness.len() {
            continue;
        }
        if witness.len() < 2 {
            witness = vec![0, r];
        }
        let adj = reduce::induced(m, conn, &cand);
        let kept = reduce::twin_free(&adj);
        let (cand, adj) = if kept.len() < cand.len() {
            let sub: Vec<u64> = kept.iter().map(|&i| cand[i]).collect();
            let adj = reduce::induced(m, conn, &sub);
            (sub, adj)
        } else {
            (cand, adj)
        };
        if stopped {
            upper = upper.max(2 + bnb::greedy_colour_count(&adj));
            continue;
        }
        let threshold = witness.len().saturating_sub(2);
        let remaining = opts.budget.nodes.saturating_sub(nodes).max(1);
        let time_left = deadline.map(|d| d.saturating_duration_since(Instant::now()));
        let out = bnb::CliqueSearch::new(&adj, remaining, time_left).run(threshold);
        nodes += out.nodes;
        if let Some(clique) = out.clique {
            witness = [0, r].into_iter().chain(clique.into_iter().map(|i| cand[i])).collect();
            witness.sort_unstable();
        }
        if !out.complete {
            stopped = true;
            upper = upper.max(2 + out.upper_bound);
        }
    }
    let complete = !stopped;
    Solved {
        upper_bound: if complete { witness.len() } else { upper.max(witness.len()) },
        witness,
        complete,
        nodes,
    }
}

fn finish(r: SearchResult, residues: &ResidueSet) -> SearchResult {
    assert!(
        residues.is_avoiding(&r.witness).unwrap_or(false),
        "search emitted an invalid witness for m = {}",
        r.m
    );
    debug_assert!(r.lower_bound <= r.upper_bound);
    r
}

/// Translates a set so that its smallest element becomes 0, sorted.
fn normalize(set: &[u64], m: u64) -> Vec<u64> {
    let shift = set.iter().copied().min().unwrap_or(0);
    let mut out: Vec<u64> = set.iter().map(|&a| (a + m - shift) % m).collect();
    out.sort_unstable();
    out
}
