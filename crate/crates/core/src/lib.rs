//! Sets `A` in `Z_m` whose nonzero differences avoid the squares mod `m`.
//!
//! The crate computes such sets exactly (maximum-clique search on the
//! avoidance graph), builds them explicitly (Ramsey and tournament
//! constructions glued by the CRT), bounds their size from above, and runs
//! the number-theoretic scans behind the exceptional-set estimates.
//!
//! Real-valued code is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! aliases below fix the scalar to `f64`.

pub mod bitset;
pub mod bounds;
pub mod constructions;
pub mod density;
pub mod error;
pub mod numtheory;
pub mod real;
pub mod residues;
pub mod search;

pub use bounds::{bound_report, BoundEntry, BoundReport};
pub use constructions::{ConstructionOutput, Method};
pub use density::{DensityReport, ParamGrid, Variant};
pub use error::{Error, Result};
pub use numtheory::{factorize, Factorization, PrimeClassSet};
pub use real::Real;
pub use residues::{avoidance_graph, is_avoiding, residue_set, AvoidanceGraph, ResidueSet};
pub use search::{max_avoiding, max_avoiding_with, scan_table, Budget, SearchOptions, SearchResult};

pub type BoundReportF64 = BoundReport<f64>;
pub type BoundEntryF64 = BoundEntry<f64>;
pub type ConstructionOutputF64 = ConstructionOutput<f64>;
pub type DensityReportF64 = DensityReport<f64>;
pub type ParamGridF64 = ParamGrid<f64>;
