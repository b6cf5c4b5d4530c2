//! Streaming scan of `m = 1..=x` tallying the conditions.

use std::ops::Add;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{BlockFactorizer, Factorization};
use crate::real::Real;

use super::conditions::{check_eps, check_i, check_ii, check_x, condition_iii, Variant};
use super::grid::{build_grid, check_iv, ParamGrid};
use super::tv::event_e;

/// Largest `x` accepted by [`density_scan`].
pub const MAX_SCAN: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct DensityReport<F> {
    pub x: u64,
    pub eps: F,
    pub c: F,
    pub variant: Variant,
    pub total: u64,
    pub fail_i: u64,
    pub fail_ii: u64,
    pub fail_iii: u64,
    /// `None` when the grid is degenerate at this `x`.
    pub fail_iv: Option<u64>,
    pub event_e_hits: Option<u64>,
    /// `J` of the grid, when it exists.
    #[serde(rename = "J")]
    pub j_max: Option<usize>,
    /// `exp(-(log 1/eps)^{1/10})`; reported, never asserted.
    pub c_eps: F,
}

impl<F: Real> DensityReport<F> {
    fn frac(&self, n: u64) -> F {
        F::from_int(n) / F::from_int(self.total.max(1))
    }

    pub fn frac_i(&self) -> F {
        self.frac(self.fail_i)
    }

    pub fn frac_ii(&self) -> F {
        self.frac(self.fail_ii)
    }

    pub fn frac_iii(&self) -> F {
        self.frac(self.fail_iii)
    }

    pub fn frac_iv(&self) -> Option<F> {
        self.fail_iv.map(|n| self.frac(n))
    }

    pub fn frac_event_e(&self) -> Option<F> {
        self.event_e_hits.map(|n| self.frac(n))
    }

    pub const CSV_HEADER: &'static str =
        "x,eps,C,variant,total,frac_i,frac_ii,frac_iii,frac_iv,frac_event_e,J,c_eps";

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<F>| v.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.x,
            self.eps,
            self.c,
            self.variant.name(),
            self.total,
            self.frac_i(),
            self.frac_ii(),
            self.frac_iii(),
            opt(self.frac_iv()),
            opt(self.frac_event_e()),
            self.j_max.map(|j| j.to_string()).unwrap_or_default(),
            self.c_eps
        )
    }
}

/// `exp(-(log 1/eps)^{1/10})`.
pub fn c_eps<F: Real>(eps: F) -> F {
    (-eps.recip().ln().powf(F::lit(0.1))).exp()
}

#[derive(Clone, Copy, Default)]
struct Tally {
    total: u64,
    fail_i: u64,
    fail_ii: u64,
    fail_iii: u64,
    fail_iv: u64,
    event_e: u64,
}

impl Add for Tally {
    type Output = Tally;

    fn add(self, o: Tally) -> Tally {
        Tally {
            total: self.total + o.total,
            fail_i: self.fail_i + o.fail_i,
            fail_ii: self.fail_ii + o.fail_ii,
            fail_iii: self.fail_iii + o.fail_iii,
            fail_iv: self.fail_iv + o.fail_iv,
            event_e: self.event_e + o.event_e,
        }
    }
}

struct Scanner<'g, F> {
    x: f64,
    eps: f64,
    variant: Variant,
    grid: Option<&'g ParamGrid<F>>,
}

impl<F: Real> Scanner<'_, F> {
    fn tally(&self, f: &Factorization) -> Tally {
        let mut t = Tally {
            total: 1,
            ..Tally::default()
        };
        // parameters were validated up front
        t.fail_i = u64::from(!check_i(f, self.x).unwrap());
        t.fail_ii = u64::from(!check_ii(f, self.x).unwrap());
        t.fail_iii = u64::from(!condition_iii(f, self.x, self.eps, self.variant).unwrap());
        if let Some(g) = self.grid {
            t.fail_iv = u64::from(!check_iv(f, g));
            let mut e = vec![0u32; g.j_max];
            for q in f.primes() {
                if let Some(j) = g.locate(q) {
                    e[j - 1] += 1;
                }
            }
            t.event_e = u64::from(event_e(&e));
        }
        t
    }
}

/// Scans `m = 1..=x`, tallying failures of (i), (ii), (iii) and, when the
/// grid at `(x, eps, C)` exists and is not degenerate, of (iv) and hits of
/// the event E.
pub fn density_scan<F: Real>(x: u64, eps: f64, c: f64, variant: Variant) -> Result<DensityReport<F>> {
    check_x(x as f64)?;
    check_eps(eps)?;
    if x > MAX_SCAN {
        return Err(Error::Parameter {
            name: "x",
            value: x as f64,
            allowed: "[16, 10^8]",
        });
    }
    let grid = match build_grid::<F>(F::from_int(x), F::lit(eps), F::lit(c)) {
        Ok(g) => Some(g),
        // no grid at all when theta <= 1; (i)-(iii) do not need one
        Err(Error::DegenerateGrid(_)) | Err(Error::Parameter { name: "theta", .. }) => None,
        Err(e) => return Err(e),
    };
    let scanner = Scanner {
        x: x as f64,
        eps,
        variant,
        grid: grid.as_ref(),
    };
    let factorizer = BlockFactorizer::new(x);
    let starts: Vec<u64> = factorizer.block_starts().collect();
    let tally = starts
        .into_par_iter()
        .map(|s| {
            factorizer
                .block(s)
                .iter()
                .fold(Tally::default(), |acc, f| acc + scanner.tally(&f))
        })
        .reduce(Tally::default, Add::add);
    let has_grid = grid.is_some();
    Ok(DensityReport {
        x,
        eps: F::lit(eps),
        c: F::lit(c),
        variant,
        total: tally.total,
        fail_i: tally.fail_i,
        fail_ii: tally.fail_ii,
        fail_iii: tally.fail_iii,
        fail_iv: has_grid.then_some(tally.fail_iv),
        event_e_hits: has_grid.then_some(tally.event_e),
        j_max: grid.map(|g| g.j_max),
        c_eps: c_eps(F::lit(eps)),
    })
}
