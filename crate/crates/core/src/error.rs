use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {p} is not congruent to {expected} mod 4")]
    WrongClass { p: u64, expected: u64 },
    #[error("invalid interval: lower end {lo} exceeds upper end {hi}")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("modulus {m} exceeds the supported limit {limit}")]
    ModulusTooLarge { m: u64, limit: u64 },
    #[error("modulus must be at least {min}, got {m}")]
    ModulusTooSmall { m: u64, min: u64 },
    #[error("modulus {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("element {a} is not a residue class modulo {m}")]
    ElementOutOfRange { a: u64, m: u64 },
    #[error("odd-part reduction needs m = 2 mod 4, got {0}")]
    NotTwiceOdd(u64),
    #[error("search budget must be positive")]
    ZeroBudget,
    #[error("parameter {name} = {value} outside {allowed}")]
    Parameter {
        name: &'static str,
        value: f64,
        allowed: &'static str,
    },
    #[error("degenerate parameter grid: {0}")]
    DegenerateGrid(String),
    #[error("prime sets {0} and {1} overlap")]
    OverlappingSets(usize, usize),
    #[error("prime set {0} is empty")]
    EmptySet(usize),
    #[error("prime {p} lies beyond the scan limit {x}")]
    PrimeBeyondLimit { p: u64, x: u64 },
    #[error("malformed cache line {line}: {reason}")]
    Cache { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}
