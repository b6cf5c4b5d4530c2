//! Closed-form upper bounds for avoiding sets.
//!
//! Every value here bounds `|A|` for `A` avoiding in `Z_m`. Values are kept
//! unclamped; [`BoundEntry::effective`] and [`BoundReport::best`] apply the
//! trivial clamp `|A| <= m`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime, Factorization};
use crate::real::Real;

/// `m^{1/2} q^{-1/2} (10 w)^{2w}` for squarefree `m`, where `w = omega(m)` and
/// `q` is the least prime divisor `= 3 mod 4` when `omega3(m)` is odd and 1
/// otherwise. `None` when `m` is not squarefree.
pub fn squarefree_bound<F: Real>(f: &Factorization) -> Option<F> {
    if !f.is_squarefree() {
        return None;
    }
    let w = f.omega();
    let q = if f.omega3() % 2 == 1 {
        f.primes().find(|p| p % 4 == 3).unwrap_or(1)
    } else {
        1
    };
    let ten_w = F::lit(10.0 * w as f64);
    let factor = if w == 0 { F::one() } else { ten_w.powi(2 * w as i32) };
    Some((F::from_int(f.m()) / F::from_int(q)).sqrt() * factor)
}

/// 1 for `p = 2` and `p = 3 mod 4`, `sqrt(p)` for `p = 1 mod 4`.
pub fn trivial_prime_bound<F: Real>(p: u64) -> Result<F> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(if p % 4 == 1 { F::from_int(p).sqrt() } else { F::one() })
}

/// `sqrt(p/2) + 1` for primes `p = 1 mod 4`; `None` otherwise.
pub fn hanson_petridis_bound<F: Real>(p: u64) -> Option<F> {
    (p % 4 == 1 && is_prime(p)).then(|| (F::from_int(p) / F::lit(2.0)).sqrt() + F::one())
}

/// The sharper of the two prime bounds.
pub fn prime_bound<F: Real>(p: u64) -> Result<F> {
    let t = trivial_prime_bound::<F>(p)?;
    Ok(hanson_petridis_bound::<F>(p).map_or(t, |h| h.min(t)))
}

/// `m1 * g(m2)` for a coprime split `m = m1 m2` where `g(m2)` bounds
/// avoiding sets in `Z_{m2}`.
pub fn compose_bound<F: Real>(m1: u64, g_m2: F) -> F {
    F::from_int(m1) * g_m2
}

/// Splits of `m` along the descending list `q_1 > q_2 > ...` of primes
/// `= 3 mod 4` dividing `m / P(m)`: for each odd index `i`, the pair
/// `(q_i, m1)` with `m1 = P(m) * prod_{k > i} q_k`. The cofactor `m / m1` is
/// squarefree with an odd number of primes `= 3 mod 4`, the least being `q_i`.
pub fn odd_index_splits(f: &Factorization) -> Vec<(u64, Factorization)> {
    let qs = f.squarefree_3mod4_desc();
    (0..qs.len())
        .step_by(2)
        .map(|k| {
            let tail = &qs[k + 1..];
            let m1 = f.restrict(|p, e| e >= 2 || tail.contains(&p));
            (qs[k], m1)
        })
        .collect()
}

/// The bound `P(m) d (m2 / q)^{1/2} (10 omega(m2))^{2 omega(m2)}` for the split
/// at `q` with cofactor `m1 = P(m) d`.
pub fn split_bound<F: Real>(f: &Factorization, m1: &Factorization) -> F {
    let m2 = f.restrict(|p, _| m1.factors().iter().all(|&(r, _)| r != p));
    let g = squarefree_bound::<F>(&m2).expect("cofactor of a split is squarefree");
    compose_bound(m1.m(), g)
}

/// Best bound obtained by peeling off a single prime or an odd-index split.
/// `None` for primes, prime powers and `m = 1`.
pub fn composed_bound<F: Real>(f: &Factorization) -> Option<F> {
    if f.omega() < 2 {
        return None;
    }
    let m = f.m();
    let single = f
        .factors()
        .iter()
        .filter(|&&(_, e)| e == 1)
        .map(|&(p, _)| compose_bound(m / p, prime_bound::<F>(p).expect("prime factor")));
    let splits = odd_index_splits(f).into_iter().map(|(_, m1)| split_bound::<F>(f, &m1));
    single.chain(splits).reduce(F::min)
}

/// `m^{1/2} (3 w)^{3w/2}`, an older bound kept for comparison only.
pub fn prior_work_bound<F: Real>(f: &Factorization) -> F {
    let w = f.omega() as f64;
    let factor = if w == 0.0 { F::one() } else { F::lit(3.0 * w).powf(F::lit(1.5 * w)) };
    F::from_int(f.m()).sqrt() * factor
}

/// Whether `m` has a prime factor `q = 3 mod 4` with `q >= m^{1 - eps}`,
/// which forces every avoiding set to have size at most `m^eps`.
pub fn m_epsilon_member(f: &Factorization, eps: f64) -> Result<bool> {
    check_small_eps(eps)?;
    Ok(f
        .primes()
        .any(|q| q % 4 == 3 && q_dominates(q, f.m(), eps)))
}

fn check_small_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 0.5 {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "eps",
            value: eps,
            allowed: "(0, 1/2)",
        })
    }
}

fn q_dominates(q: u64, m: u64, eps: f64) -> bool {
    q as f64 >= (m as f64).powf(1.0 - eps)
}

/// `#{m <= x : m_epsilon_member(m, eps)}` without factoring every `m`.
///
/// For `eps < 1/2` the prime `q` exceeds `sqrt(m)`, so it is unique and the
/// count is a sum over primes `q = 3 mod 4` of the multiples `m = kq <= x`
/// satisfying `q >= m^{1 - eps}`.
pub fn m_epsilon_count(x: u64, eps: f64) -> Result<u64> {
    check_small_eps(eps)?;
    let mut total = 0;
    for q in crate::numtheory::primes_up_to(x) {
        if q % 4 != 3 {
            continue;
        }
        // the admissible multiples form an initial segment k = 1..=kmax
        let guess = ((q as f64).ln() / (1.0 - eps)).exp() / q as f64;
        let mut k = (guess.floor() as u64).clamp(1, x / q);
        while k < x / q && q_dominates(q, (k + 1) * q, eps) {
            k += 1;
        }
        while k > 0 && !q_dominates(q, k * q, eps) {
            k -= 1;
        }
        total += k;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct BoundEntry<F> {
    pub name: String,
    /// Unclamped value; `None` when the bound does not apply.
    pub value: Option<F>,
    /// `min(value, m)`.
    pub effective: Option<F>,
    pub applicable: bool,
    /// Why the bound is inapplicable, or a caveat.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Real")]
pub struct BoundReport<F> {
    pub m: u64,
    pub bounds: Vec<BoundEntry<F>>,
    /// Smallest applicable value, clamped to `m`.
    pub best: F,
}

impl<F: Real> BoundReport<F> {
    pub fn get(&self, name: &str) -> Option<&BoundEntry<F>> {
        self.bounds.iter().find(|b| b.name == name)
    }

    pub fn value(&self, name: &str) -> Option<F> {
        self.get(name).and_then(|b| b.value)
    }

    pub const CSV_HEADER: &'static str = "m,name,value,effective,applicable,reason";

    /// One CSV row per entry, without the header.
    pub fn to_csv(&self) -> String {
        let show = |v: Option<F>| v.map(|v| v.to_string()).unwrap_or_default();
        self.bounds
            .iter()
            .map(|b| {
                format!(
                    "{},{},{},{},{},{}\n",
                    self.m,
                    b.name,
                    show(b.value),
                    show(b.effective),
                    b.applicable,
                    b.reason.as_deref().unwrap_or("").replace(',', ";")
                )
            })
            .collect()
    }
}

pub const SQUAREFREE: &str = "squarefree";
pub const PRIME_TRIVIAL: &str = "prime_trivial";
pub const HANSON_PETRIDIS: &str = "hanson_petridis";
pub const COMPOSED: &str = "composed";
pub const PRIOR_WORK: &str = "prior_work";
pub const CLAMP: &str = "clamp";

/// Every bound that applies to `m`, plus the clamp.
pub fn bound_report<F: Real>(f: &Factorization) -> BoundReport<F> {
    let m = f.m();
    let mf = F::from_int(m);
    let entry = |name: &str, value: Option<F>, why_not: &str| BoundEntry {
        name: name.to_string(),
        value,
        effective: value.map(|v| v.min(mf)),
        applicable: value.is_some(),
        reason: value.is_none().then(|| why_not.to_string()),
    };
    let prime = f.is_prime();
    let mut bounds = vec![
        entry(CLAMP, Some(mf), ""),
        entry(SQUAREFREE, squarefree_bound(f), "m is not squarefree"),
        entry(
            PRIME_TRIVIAL,
            prime.then(|| trivial_prime_bound(m).expect("prime")),
            "m is not prime",
        ),
        entry(HANSON_PETRIDIS, hanson_petridis_bound(m), "m is not a prime = 1 mod 4"),
        entry(COMPOSED, composed_bound(f), "needs two distinct prime factors"),
    ];
    let mut prior = entry(PRIOR_WORK, Some(prior_work_bound(f)), "");
    prior.applicable = false;
    prior.reason = Some("from prior work; comparison only".to_string());
    bounds.push(prior);
    let best = bounds
        .iter()
        .filter(|b| b.applicable)
        .filter_map(|b| b.effective)
        .fold(mf, F::min);
    BoundReport { m, bounds, best }
}

/// Convenience wrapper that factors `m` first.
pub fn bound_report_for<F: Real>(m: u64) -> Result<BoundReport<F>> {
    if m == 0 {
        return Err(Error::ModulusTooSmall { m, min: 1 });
    }
    Ok(bound_report(&factorize(m)))
}
