//! 64-bit modular arithmetic helpers.

use num_integer::Integer;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Combines `x = r_i (mod m_i)` over pairwise coprime moduli into the unique
/// solution modulo their product.
pub fn crt(parts: &[(u64, u64)]) -> Option<(u64, u64)> {
    let mut acc = (0u64, 1u64);
    for &(r, m) in parts {
        let (a, n) = acc;
        let inv = inv_mod(n % m, m)?;
        let t = mul_mod((r + m - a % m) % m, inv, m);
        let modulus = n.checked_mul(m)?;
        acc = ((a as u128 + n as u128 * t as u128) as u64 % modulus, modulus);
    }
    Some(acc)
}
