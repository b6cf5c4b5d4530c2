//! The parameter grid `theta`, `y_0 > y_1 > ... > y_J` and the prime sets
//! `T_j = {q = 3 mod 4 : y_j < q <= y_{j-1}}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{primes_in_class, Factorization, PowerfulPrimes, PrimeClassSet, ResidueClass};
use crate::real::Real;

use super::conditions::check_eps;

/// Largest `y_0` for which the sets `T_j` are sieved.
pub const SIEVE_CAP: f64 = (1u64 << 40) as f64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct ParamGrid<F> {
    pub x: F,
    pub eps: F,
    pub c: F,
    pub theta: F,
    /// `y_0, ..., y_J`.
    pub y: Vec<F>,
    #[serde(rename = "J")]
    pub j_max: usize,
    /// `T_1, ..., T_J`; empty for synthetic grids.
    pub t: Vec<PrimeClassSet>,
    /// `H_1(T_j)`; absent for synthetic grids.
    pub lambda: Option<Vec<F>>,
    pub synthetic: bool,
}

/// `theta = C (log 1/eps)^{1/10}`.
pub fn theta<F: Real>(eps: F, c: F) -> F {
    c * eps.recip().ln().powf(F::lit(0.1))
}

/// `J = floor(log(1/eps) / (2 log theta))`.
pub fn j_max<F: Real>(eps: F, theta: F) -> usize {
    let j = (eps.recip().ln() / (F::lit(2.0) * theta.ln())).floor();
    j.to_f64_lossy().max(0.0) as usize
}

/// The arithmetic part of the grid with `x` as a formal parameter. No prime
/// sets are built, so `x` may be far beyond anything sieveable.
pub fn build_synthetic_grid<F: Real>(x: F, eps: F, c: F) -> Result<ParamGrid<F>> {
    check_eps(eps.to_f64_lossy())?;
    if !(c > F::zero()) {
        return Err(Error::Parameter {
            name: "C",
            value: c.to_f64_lossy(),
            allowed: "(0, inf)",
        });
    }
    if !(x > F::one()) {
        return Err(Error::Parameter {
            name: "x",
            value: x.to_f64_lossy(),
            allowed: "(1, inf)",
        });
    }
    let theta = theta(eps, c);
    if !(theta > F::one()) {
        return Err(Error::Parameter {
            name: "theta",
            value: theta.to_f64_lossy(),
            allowed: "(1, inf); increase C or decrease eps",
        });
    }
    let j_max = j_max(eps, theta);
    let y0 = x.powf(eps.sqrt());
    // y_j = y_0^{theta^{-j}}, computed in log space
    let y = (0..=j_max)
        .map(|j| (y0.ln() / theta.powi(j as i32)).exp())
        .collect();
    Ok(ParamGrid {
        x,
        eps,
        c,
        theta,
        y,
        j_max,
        t: Vec::new(),
        lambda: None,
        synthetic: true,
    })
}

/// Full grid with the prime sets `T_j` and `lambda_j = H_1(T_j)`.
///
/// Fails with [`Error::DegenerateGrid`] when `J = 0` or `y_J < 3`, which is
/// the usual outcome at desk-scale `x`.
pub fn build_grid<F: Real>(x: F, eps: F, c: F) -> Result<ParamGrid<F>> {
    let mut grid = build_synthetic_grid(x, eps, c)?;
    if grid.j_max == 0 {
        return Err(Error::DegenerateGrid(format!(
            "J = 0 (theta = {}, eps = {})",
            grid.theta, grid.eps
        )));
    }
    let y_last = grid.y[grid.j_max];
    if y_last < F::lit(3.0) {
        return Err(Error::DegenerateGrid(format!("y_J = {y_last} < 3")));
    }
    let y0 = grid.y[0].to_f64_lossy();
    if y0 > SIEVE_CAP {
        return Err(Error::Parameter {
            name: "y_0",
            value: y0,
            allowed: "[0, 2^40]; use a synthetic grid",
        });
    }
    grid.t = (1..=grid.j_max)
        .map(|j| {
            let lo = grid.y[j].to_f64_lossy();
            let hi = grid.y[j - 1].to_f64_lossy();
            primes_in_class(lo, hi, ResidueClass::Three).map(|mut t| {
                t.label = format!("T_{j}");
                t
            })
        })
        .collect::<Result<_>>()?;
    grid.lambda = Some(grid.t.iter().map(PrimeClassSet::h1).collect());
    grid.synthetic = false;
    Ok(grid)
}

impl<F: Real> ParamGrid<F> {
    /// The `j` in `1..=J` with `q` in `T_j`.
    pub fn locate(&self, q: u64) -> Option<usize> {
        if q % 4 != 3 || self.t.is_empty() {
            return None;
        }
        // y is decreasing, T_j = (y_j, y_{j-1}]
        let qf = F::from_int(q);
        if qf > self.y[0] || qf <= self.y[self.j_max] {
            return None;
        }
        let j = self.y.partition_point(|&y| y >= qf);
        debug_assert!(self.t[j - 1].contains(q));
        Some(j)
    }

    /// Whether `lambda_j` lies in `(log(theta)/3, log(theta))` for every `j`.
    pub fn lambda_in_expected_range(&self) -> Option<bool> {
        let lt = self.theta.ln();
        self.lambda
            .as_ref()
            .map(|l| l.iter().all(|&v| v > lt / F::lit(3.0) && v < lt))
    }
}

/// `#{q < y}` as an integer threshold: `q < y` iff `q < ceil(y)`.
fn strict_threshold<F: Real>(y: F) -> u64 {
    let c = y.ceil().to_f64_lossy();
    if c >= u64::MAX as f64 {
        u64::MAX
    } else {
        c as u64
    }
}

/// (iv): `D(m, y_j) <= y_j^{theta/2}` for every `0 <= j <= J`.
pub fn check_iv<F: Real>(f: &Factorization, grid: &ParamGrid<F>) -> bool {
    let half = grid.theta / F::lit(2.0);
    grid.y.iter().all(|&y| {
        let d = f.smooth_part_3mod4(strict_threshold(y), PowerfulPrimes::Include);
        F::from_int(d) <= y.powf(half)
    })
}
