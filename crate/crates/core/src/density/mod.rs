//! Empirical side of the exceptional-set argument: per-modulus conditions,
//! the parameter grid with its prime sets, Poisson comparisons and streaming
//! scans over `m <= x`.

mod conditions;
mod grid;
mod scan;
mod tv;

pub use conditions::{
    check_i, check_ii, condition_a, condition_b, condition_iii, condition_iii_witness, eps_in_claimed_range,
    truncation_check, TruncationCheck, Variant,
};
pub use grid::{build_grid, build_synthetic_grid, check_iv, j_max, theta, ParamGrid, SIEVE_CAP};
pub use scan::{c_eps, density_scan, DensityReport, MAX_SCAN};
pub use tv::{check_disjoint, event_e, omega_vector, pattern_probability, poisson_pmf, tv_distance_empirical};
