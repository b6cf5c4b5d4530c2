//! Legendre and Jacobi symbols, least quadratic nonresidue.

use super::primality::is_prime;
use crate::error::{Error, Result};

/// Jacobi symbol `(a/n)` for odd `n`, via quadratic reciprocity.
pub fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Jacobi symbol of a signed numerator.
fn jacobi_signed(a: i64, n: u64) -> i8 {
    jacobi(a.rem_euclid(n as i64) as u64, n)
}

/// Legendre symbol `(a/p)`: 0 if `p | a`, 1 for nonzero squares, -1 otherwise.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(jacobi_signed(a, p))
}

/// Smallest `n >= 2` that is a quadratic nonresidue modulo the odd prime `p`.
pub fn least_nonresidue(p: u64) -> Result<u64> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok((2..p).find(|&n| jacobi(n, p) == -1).expect("half of Z_p* are nonresidues"))
}
