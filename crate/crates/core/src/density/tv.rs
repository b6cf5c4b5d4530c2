//! Prime-divisor count vectors against independent Poisson variables.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::numtheory::{Factorization, PrimeClassSet};
use crate::real::Real;

/// Rejects prime sets that share a prime.
pub fn check_disjoint(sets: &[PrimeClassSet]) -> Result<()> {
    let mut seen = HashMap::new();
    for (j, t) in sets.iter().enumerate() {
        for &p in &t.primes {
            if let Some(i) = seen.insert(p, j) {
                if i != j {
                    return Err(Error::OverlappingSets(i, j));
                }
            }
        }
    }
    Ok(())
}

/// `omega(m, T_j)`: distinct primes of `T_j` dividing `m`, for each `j`.
pub fn omega_vector(f: &Factorization, sets: &[PrimeClassSet]) -> Result<Vec<u32>> {
    check_disjoint(sets)?;
    Ok(sets
        .iter()
        .map(|t| f.primes().filter(|&p| t.contains(p)).count() as u32)
        .collect())
}

/// The pattern `e_j = 1, e_{j+1} = 0, e_{j+2} = 1, e_{j+3} = 0` occurs
/// somewhere in `e`.
pub fn event_e(e: &[u32]) -> bool {
    e.windows(4).any(|w| w == [1, 0, 1, 0])
}

/// `P(Z = k)` for `Z ~ Poisson(lambda)`.
pub fn poisson_pmf<F: Real>(lambda: F, k: u32) -> F {
    if lambda == F::zero() {
        return if k == 0 { F::one() } else { F::zero() };
    }
    let log_fact: F = (2..=k).map(|i| F::from_int(i as u64).ln()).sum();
    (F::from_int(k as u64) * lambda.ln() - lambda - log_fact).exp()
}

/// Probability of the pattern (1, 0, 1, 0) in one window of four
/// independent Poisson variables with common mean `lambda`.
pub fn pattern_probability<F: Real>(lambda: F) -> F {
    let z0 = poisson_pmf(lambda, 0);
    let z1 = poisson_pmf(lambda, 1);
    z1 * z0 * z1 * z0
}

/// Exact total variation distance between the law of
/// `(omega(m, T_1), ..., omega(m, T_r))` for uniform `m` in `[1, x]` and
/// independent Poisson variables with means `H_1(T_j)`.
///
/// The empirical law is tabulated by sieving multiples of every prime in
/// the sets. Outside the empirical support the distance picks up the whole
/// Poisson mass there, which is `1 - (Poisson mass on the support)`, so no
/// truncation is involved.
pub fn tv_distance_empirical<F: Real>(x: u64, sets: &[PrimeClassSet]) -> Result<F> {
    if x < 2 {
        return Err(Error::Parameter {
            name: "x",
            value: x as f64,
            allowed: "[2, inf)",
        });
    }
    for (j, t) in sets.iter().enumerate() {
        if t.is_empty() {
            return Err(Error::EmptySet(j));
        }
        if let Some(&p) = t.primes.iter().find(|&&p| p > x) {
            return Err(Error::PrimeBeyondLimit { p, x });
        }
    }
    check_disjoint(sets)?;
    let r = sets.len();
    if r == 0 {
        return Ok(F::zero());
    }
    let mut counts = vec![0u8; x as usize * r];
    for (j, t) in sets.iter().enumerate() {
        for &p in &t.primes {
            let mut k = p;
            while k <= x {
                counts[(k as usize - 1) * r + j] += 1;
                k += p;
            }
        }
    }
    let mut hist: BTreeMap<&[u8], u64> = BTreeMap::new();
    for row in counts.chunks_exact(r) {
        *hist.entry(row).or_default() += 1;
    }
    let lambda: Vec<F> = sets.iter().map(PrimeClassSet::h1).collect();
    let xf = F::from_int(x);
    let mut diff = F::zero();
    let mut covered = F::zero();
    for (row, &n) in &hist {
        let p: F = row
            .iter()
            .zip(&lambda)
            .map(|(&k, &l)| poisson_pmf(l, k as u32))
            .fold(F::one(), |a, b| a * b);
        diff = diff + (F::from_int(n) / xf - p).abs();
        covered = covered + p;
    }
    let outside = (F::one() - covered).max(F::zero());
    Ok((diff + outside) / F::lit(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{factorize, ResidueClass};

    fn set(primes: &[u64]) -> PrimeClassSet {
        PrimeClassSet::from_primes("T", primes.to_vec(), ResidueClass::All)
    }

    #[test]
    fn omega_vectors() {
        let t = [set(&[3, 7]), set(&[11])];
        assert_eq!(omega_vector(&factorize(21), &t).unwrap(), vec![2, 0]);
        assert_eq!(omega_vector(&factorize(1), &t).unwrap(), vec![0, 0]);
        let t = [set(&[3, 7]), set(&[11, 19])];
        assert_eq!(omega_vector(&factorize(3 * 11 * 19), &t).unwrap(), vec![1, 2]);
        let overlap = [set(&[3, 7]), set(&[7])];
        assert!(matches!(
            omega_vector(&factorize(21), &overlap),
            Err(Error::OverlappingSets(0, 1))
        ));
    }

    #[test]
    fn event_pattern() {
        assert!(event_e(&[1, 0, 1, 0]));
        assert!(event_e(&[2, 1, 0, 1, 0]));
        assert!(!event_e(&[0, 0, 0, 0]));
        assert!(!event_e(&[1, 0, 1]));
        assert!(!event_e(&[0, 1, 0, 1]));
    }

    #[test]
    fn pmf() {
        let l = 0.7f64;
        assert!((poisson_pmf(l, 0) - (-l).exp()).abs() < 1e-15);
        assert!((poisson_pmf(l, 3) - l.powi(3) * (-l).exp() / 6.0).abs() < 1e-15);
        let total: f64 = (0..60).map(|k| poisson_pmf(l, k)).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((pattern_probability(l) - l * l * (-4.0 * l).exp()).abs() < 1e-15);
    }

    #[test]
    fn single_prime_closed_form() {
        let x = 300_000u64;
        let tv: f64 = tv_distance_empirical(x, &[set(&[3])]).unwrap();
        let e1 = (x / 3) as f64 / x as f64;
        let l: f64 = 1.0 / 3.0;
        let (p0, p1) = ((-l).exp(), l * (-l).exp());
        let want = 0.5 * (((1.0 - e1) - p0).abs() + (e1 - p1).abs() + (1.0 - p0 - p1));
        assert!((tv - want).abs() < 1e-14, "{tv} vs {want}");
    }

    #[test]
    fn rejected_inputs() {
        assert!(matches!(
            tv_distance_empirical::<f64>(10, &[set(&[11])]),
            Err(Error::PrimeBeyondLimit { p: 11, x: 10 })
        ));
        assert!(matches!(
            tv_distance_empirical::<f64>(10, &[set(&[3]), set(&[])]),
            Err(Error::EmptySet(1))
        ));
        assert!(tv_distance_empirical::<f64>(1, &[set(&[3])]).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let a: f32 = tv_distance_empirical(10_000, &[set(&[3, 7]), set(&[11])]).unwrap();
        let b: f64 = tv_distance_empirical(10_000, &[set(&[3, 7]), set(&[11])]).unwrap();
        assert!((a as f64 - b).abs() < 1e-5);
    }
}
