//! Prime-power decomposition of 64-bit integers.

use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::modular::mul_mod;
use super::primality::is_prime;
use super::sieve::primes_up_to;

/// Trial division bound used before switching to Pollard-Brent.
const TRIAL_LIMIT: u64 = 1 << 12;

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

/// Whether a smooth part keeps or drops the primes that divide `m` to a
/// power at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerfulPrimes {
    Include,
    Exclude,
}

/// `m` together with its prime factors in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    m: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds from already known factors. The caller guarantees that the
    /// primes are prime, increasing, and that exponents are positive.
    pub(crate) fn from_sorted_unchecked(m: u64, factors: Vec<(u64, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert_eq!(
            factors.iter().map(|&(p, e)| p.pow(e)).product::<u64>(),
            m
        );
        Self { m, factors }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Reassembles `m` from its factors.
    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Number of distinct prime divisors congruent to 3 mod 4.
    pub fn omega3(&self) -> usize {
        self.factors.iter().filter(|&&(p, _)| p % 4 == 3).count()
    }

    /// Product of the prime powers `p^a || m` with `a >= 2`.
    pub fn powerful_part(&self) -> u64 {
        self.factors
            .iter()
            .filter(|&&(_, e)| e >= 2)
            .map(|&(p, e)| p.pow(e))
            .product()
    }

    /// Product of the full prime powers `q^a || m` over primes `q < y` with
    /// `q = 3 mod 4`. With [`PowerfulPrimes::Exclude`] the primes dividing the
    /// powerful part are skipped, which gives the smooth part of `m / P(m)`.
    pub fn smooth_part_3mod4(&self, y: u64, powerful: PowerfulPrimes) -> u64 {
        self.factors
            .iter()
            .filter(|&&(q, e)| q < y && q % 4 == 3 && (powerful == PowerfulPrimes::Include || e == 1))
            .map(|&(q, e)| q.pow(e))
            .product()
    }

    /// Primes `q = 3 mod 4` dividing `m / P(m)`, largest first.
    pub fn squarefree_3mod4_desc(&self) -> Vec<u64> {
        self.factors
            .iter()
            .rev()
            .filter(|&&(q, e)| e == 1 && q % 4 == 3)
            .map(|&(q, _)| q)
            .collect()
    }

    /// The divisor made of the prime powers selected by `keep`.
    pub fn restrict(&self, keep: impl Fn(u64, u32) -> bool) -> Factorization {
        let factors: Vec<(u64, u32)> = self.factors.iter().copied().filter(|&(p, e)| keep(p, e)).collect();
        let m = factors.iter().map(|&(p, e)| p.pow(e)).product();
        Self { m, factors }
    }

    /// The odd part of `m` with the factor 2 removed.
    pub fn odd_part(&self) -> u64 {
        match self.factors.first() {
            Some(&(2, e)) => self.m >> e,
            _ => self.m,
        }
    }
}

/// Factors `1 <= m < 2^64`; `m = 1` gives the empty factorization.
pub fn factorize(m: u64) -> Factorization {
    assert!(m >= 1, "factorize needs a positive integer");
    let mut rest = m;
    let mut factors = Vec::new();
    for &p in trial_primes() {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        if rest < TRIAL_LIMIT * TRIAL_LIMIT {
            factors.push((rest, 1));
        } else {
            let mut large = Vec::new();
            split_into_primes(rest, &mut large);
            large.sort_unstable();
            for p in large {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    Factorization { m, factors }
}

fn split_into_primes(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let root = n.isqrt();
    if root * root == n {
        split_into_primes(root, out);
        split_into_primes(root, out);
        return;
    }
    let d = pollard_brent(n);
    split_into_primes(d, out);
    split_into_primes(n / d, out);
}

/// Finds a nontrivial factor of an odd composite `n` with Brent's cycle
/// detection. Deterministic: increments the polynomial constant on failure.
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys);
        let mut g;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            loop {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
                if k >= r || g != 1 {
                    break;
                }
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(factorize(65).factors(), &[(5, 1), (13, 1)]);
        assert!(factorize(1).factors().is_empty());
        assert_eq!(factorize(360).factors(), &[(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(factorize(60).omega(), 3);
        assert_eq!(factorize(21).omega3(), 2);
        assert_eq!(factorize(65).omega3(), 0);
        assert_eq!(factorize(360).powerful_part(), 72);
        assert_eq!(factorize(65).powerful_part(), 1);
        assert_eq!(factorize(12).powerful_part(), 4);
        let f = factorize(693);
        assert_eq!(f.smooth_part_3mod4(10, PowerfulPrimes::Include), 63);
        assert_eq!(f.smooth_part_3mod4(4, PowerfulPrimes::Include), 9);
        assert_eq!(f.smooth_part_3mod4(10, PowerfulPrimes::Exclude), 7);
        assert_eq!(factorize(65).smooth_part_3mod4(100, PowerfulPrimes::Include), 1);
    }

    #[test]
    fn hard_semiprimes_and_powers() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        assert_eq!(factorize(p * q).factors(), &[(q, 1), (p, 1)]);
        assert_eq!(factorize(p * p).factors(), &[(p, 2)]);
        let r = 2_097_143u64; // prime
        assert_eq!(factorize(r * r * r).factors(), &[(r, 3)]);
        assert_eq!(factorize(u64::MAX).product(), u64::MAX);
        assert_eq!(
            factorize(18_446_744_073_709_551_557).factors(),
            &[(18_446_744_073_709_551_557, 1)]
        );
    }

    #[test]
    fn odd_part_and_squarefree_list() {
        let f = factorize(2 * 2 * 3 * 3 * 7 * 11 * 19);
        assert_eq!(f.odd_part(), 9 * 7 * 11 * 19);
        assert_eq!(f.squarefree_3mod4_desc(), vec![19, 11, 7]);
        assert!(!f.is_squarefree());
        assert!(factorize(1_000_003).is_prime());
    }
}
