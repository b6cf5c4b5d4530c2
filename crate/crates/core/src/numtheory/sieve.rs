//! Sieves: plain and segmented prime enumeration, prime sets restricted to a
//! class mod 4, and a streaming block factorizer for interval scans.

use serde::{Deserialize, Serialize};

use super::factor::Factorization;
use super::primality::is_prime;
use crate::error::{Error, Result};
use crate::real::Real;

/// Intervals up to this length are sieved in one piece.
pub const SIEVE_BLOCK: u64 = 1 << 22;

/// Above this height the base primes would not fit; candidates are tested
/// with Miller-Rabin instead.
const SIEVE_HEIGHT_LIMIT: u64 = 1 << 52;

/// All primes `p <= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    // index i stands for 2i + 1
    let half = n.div_ceil(2);
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2u64];
    out.extend(
        (1..half)
            .filter(|&i| !composite[i])
            .map(|i| (2 * i + 1) as u64),
    );
    out
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    if hi <= SIEVE_BLOCK {
        return primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect();
    }
    if hi > SIEVE_HEIGHT_LIMIT {
        let start = if lo % 2 == 0 { lo + 1 } else { lo };
        let mut out: Vec<u64> = if lo <= 2 { vec![2] } else { Vec::new() };
        let mut n = start;
        while n <= hi {
            if is_prime(n) {
                out.push(n);
            }
            n = match n.checked_add(2) {
                Some(v) => v,
                None => break,
            };
        }
        return out;
    }
    let base = primes_up_to(hi.isqrt());
    let mut out = Vec::new();
    let mut seg_lo = lo;
    let mut marks = Vec::new();
    loop {
        let seg_hi = seg_lo.saturating_add(SIEVE_BLOCK - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        marks.clear();
        marks.resize(len, true);
        for &p in &base {
            if p * p > seg_hi {
                break;
            }
            let mut start = seg_lo.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= seg_hi {
                marks[(j - seg_lo) as usize] = false;
                j += p;
            }
        }
        out.extend(
            marks
                .iter()
                .enumerate()
                .filter(|(_, &keep)| keep)
                .map(|(i, _)| seg_lo + i as u64),
        );
        if seg_hi == hi {
            break;
        }
        seg_lo = seg_hi + 1;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueClass {
    One,
    Three,
    All,
}

impl ResidueClass {
    /// 2 belongs to neither odd class.
    pub fn admits(self, p: u64) -> bool {
        match self {
            ResidueClass::One => p % 4 == 1,
            ResidueClass::Three => p % 4 == 3,
            ResidueClass::All => true,
        }
    }
}

/// A labelled set of primes from a half-open interval `(lo, hi]`, restricted
/// to one class mod 4.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeClassSet {
    pub label: String,
    pub primes: Vec<u64>,
    pub lo: f64,
    pub hi: f64,
    pub class: ResidueClass,
}

impl PrimeClassSet {
    /// Wraps an explicit prime list. Interval bounds are set to the tightest
    /// enclosing `(min - 1, max]`.
    pub fn from_primes(label: impl Into<String>, mut primes: Vec<u64>, class: ResidueClass) -> Self {
        primes.sort_unstable();
        primes.dedup();
        let lo = primes.first().map_or(0.0, |&p| (p - 1) as f64);
        let hi = primes.last().map_or(0.0, |&p| p as f64);
        Self {
            label: label.into(),
            primes,
            lo,
            hi,
            class,
        }
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Sum of `1/p`, in increasing prime order.
    pub fn h1<F: Real>(&self) -> F {
        self.primes
            .iter()
            .fold(F::zero(), |acc, &p| acc + F::one() / F::from_int(p))
    }

    /// Sum of `1/p^2`, in increasing prime order.
    pub fn h2<F: Real>(&self) -> F {
        self.primes.iter().fold(F::zero(), |acc, &p| {
            let p = F::from_int(p);
            acc + F::one() / (p * p)
        })
    }
}

/// Primes `p` with `lo < p <= hi` in the given class mod 4.
pub fn primes_in_class(lo: f64, hi: f64, class: ResidueClass) -> Result<PrimeClassSet> {
    if !(lo <= hi) || lo.is_nan() {
        return Err(Error::InvalidRange { lo, hi });
    }
    if hi > 2f64.powi(63) {
        return Err(Error::Parameter {
            name: "hi",
            value: hi,
            allowed: "at most 2^63",
        });
    }
    let first = if lo < 0.0 { 0 } else { lo.floor() as u64 + 1 };
    let last = if hi < 0.0 { 0 } else { hi.floor() as u64 };
    let primes = primes_between(first, last)
        .into_iter()
        .filter(|&p| class.admits(p))
        .collect();
    Ok(PrimeClassSet {
        label: format!("({lo}, {hi}]"),
        primes,
        lo,
        hi,
        class,
    })
}

/// Most distinct primes any `m < 2^64` can have.
const MAX_OMEGA: usize = 15;

/// Factorizations of every integer in a block `[start, start + len)`,
/// produced by dividing out base primes (a remaining-value sieve).
pub struct FactorBlock {
    start: u64,
    len: usize,
    primes: Vec<u64>,
    exps: Vec<u8>,
    counts: Vec<u8>,
}

impl FactorBlock {
    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Prime factors of `start + i` in increasing order.
    pub fn factors(&self, i: usize) -> impl Iterator<Item = (u64, u32)> + '_ {
        let base = i * MAX_OMEGA;
        (0..self.counts[i] as usize).map(move |k| (self.primes[base + k], self.exps[base + k] as u32))
    }

    pub fn factorization(&self, i: usize) -> Factorization {
        Factorization::from_sorted_unchecked(self.start + i as u64, self.factors(i).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = Factorization> + '_ {
        (0..self.len).map(|i| self.factorization(i))
    }
}

/// Streams factorizations of `1..=limit` in fixed-size blocks. Blocks are
/// independent, so callers may process them in parallel.
pub struct BlockFactorizer {
    limit: u64,
    block_len: u64,
    base: Vec<u64>,
}

impl BlockFactorizer {
    pub const DEFAULT_BLOCK: u64 = 1 << 16;

    pub fn new(limit: u64) -> Self {
        Self::with_block_len(limit, Self::DEFAULT_BLOCK)
    }

    pub fn with_block_len(limit: u64, block_len: u64) -> Self {
        assert!(block_len > 0);
        Self {
            limit,
            block_len,
            base: primes_up_to(limit.isqrt()),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Block start points covering `1..=limit`.
    pub fn block_starts(&self) -> impl Iterator<Item = u64> + '_ {
        (0..)
            .map(move |k| 1 + k * self.block_len)
            .take_while(move |&s| s <= self.limit)
    }

    pub fn block(&self, start: u64) -> FactorBlock {
        let end = start.saturating_add(self.block_len - 1).min(self.limit);
        let len = (end - start + 1) as usize;
        let mut rest: Vec<u64> = (start..=end).collect();
        let mut primes = vec![0u64; len * MAX_OMEGA];
        let mut exps = vec![0u8; len * MAX_OMEGA];
        let mut counts = vec![0u8; len];
        for &p in &self.base {
            if p * p > end {
                break;
            }
            let mut j = start.div_ceil(p) * p;
            while j <= end {
                let i = (j - start) as usize;
                let mut e = 0u8;
                while rest[i] % p == 0 {
                    rest[i] /= p;
                    e += 1;
                }
                let slot = i * MAX_OMEGA + counts[i] as usize;
                primes[slot] = p;
                exps[slot] = e;
                counts[i] += 1;
                j += p;
            }
        }
        for (i, &r) in rest.iter().enumerate() {
            if r > 1 {
                let slot = i * MAX_OMEGA + counts[i] as usize;
                primes[slot] = r;
                exps[slot] = 1;
                counts[i] += 1;
            }
        }
        FactorBlock {
            start,
            len,
            primes,
            exps,
            counts,
        }
    }
}
