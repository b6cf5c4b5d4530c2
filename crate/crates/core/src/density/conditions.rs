//! Per-modulus conditions of the truncation argument.

use serde::{Deserialize, Serialize};

use crate::bounds::{odd_index_splits, split_bound};
use crate::error::{Error, Result};
use crate::numtheory::{Factorization, PowerfulPrimes};

/// How the cofactor `S` in condition (iii) is formed for the prime `q_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `S = prod_{k > i} q_k`, the smaller primes `= 3 mod 4` of `m / P(m)`.
    Tail,
    /// `S = D(m, q_i)`, full prime powers below `q_i`, powerful part included.
    Smooth,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Tail, Variant::Smooth];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Tail => "tail",
            Variant::Smooth => "smooth",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tail" => Ok(Variant::Tail),
            "smooth" => Ok(Variant::Smooth),
            _ => Err(format!("unknown variant {s:?}, expected tail or smooth")),
        }
    }
}

pub(crate) fn check_x(x: f64) -> Result<()> {
    if x >= 16.0 {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "x",
            value: x,
            allowed: "[16, inf)",
        })
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "eps",
            value: eps,
            allowed: "(0, 1]",
        })
    }
}

/// Whether `eps` lies in `[(log x)^{-1/2}, 1]`, the range where the
/// exceptional-set estimate is claimed. Scans run outside it too.
pub fn eps_in_claimed_range(x: f64, eps: f64) -> bool {
    eps <= 1.0 && eps >= x.ln().powf(-0.5)
}

/// (i): `P(m) <= log x`.
pub fn check_i(f: &Factorization, x: f64) -> Result<bool> {
    check_x(x)?;
    Ok((f.powerful_part() as f64) <= x.ln())
}

/// (ii): `omega(m) <= 2 log log x`.
pub fn check_ii(f: &Factorization, x: f64) -> Result<bool> {
    check_x(x)?;
    Ok((f.omega() as f64) <= 2.0 * x.ln().ln())
}

/// The odd-indexed prime `q_i` of `m / P(m)` (descending order) that first
/// satisfies `q_i > x^eps` and `q_i > S^2`, if any.
pub fn condition_iii_witness(f: &Factorization, x: f64, eps: f64, variant: Variant) -> Result<Option<u64>> {
    check_eps(eps)?;
    if x <= 1.0 {
        return Err(Error::Parameter {
            name: "x",
            value: x,
            allowed: "(1, inf)",
        });
    }
    let floor = x.powf(eps);
    let qs = f.squarefree_3mod4_desc();
    for k in (0..qs.len()).step_by(2) {
        let q = qs[k];
        if (q as f64) <= floor {
            // later q's are smaller still
            break;
        }
        let s = match variant {
            Variant::Tail => qs[k + 1..].iter().product::<u64>(),
            Variant::Smooth => f.smooth_part_3mod4(q, PowerfulPrimes::Include),
        };
        if (q as u128) > (s as u128) * (s as u128) {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// (iii): some odd-indexed `q_i > x^eps` with `q_i > S^2`.
pub fn condition_iii(f: &Factorization, x: f64, eps: f64, variant: Variant) -> Result<bool> {
    Ok(condition_iii_witness(f, x, eps, variant)?.is_some())
}

/// Whether `p^2 | m` forces `p > log x`.
pub fn condition_a(f: &Factorization, x: f64) -> Result<bool> {
    check_x(x)?;
    Ok(f.factors().iter().all(|&(p, e)| e == 1 || (p as f64) > x.ln()))
}

/// Whether `|omega_j(m, t) - 0.5 log log t| < (log log x)^{2/3}` for all
/// real `3 <= t <= m` and `j` in {1, 3}, where `omega_j(m, t)` counts primes
/// `p <= t`, `p = j mod 4` dividing `m`.
///
/// `omega_j(m, .)` is a step function jumping at the prime divisors of `m`
/// and `log log t` is increasing, so the extreme deviations sit at `t = 3`,
/// `t = m` and on both sides of every jump. Checking those points decides
/// the condition for every real `t`.
pub fn condition_b(f: &Factorization, x: f64) -> Result<bool> {
    check_x(x)?;
    let m = f.m();
    if m < 3 {
        return Ok(true);
    }
    let slack = x.ln().ln().powf(2.0 / 3.0);
    for class in [1u64, 3] {
        let jumps: Vec<u64> = f.primes().filter(|p| p % 4 == class && *p > 3).collect();
        let below_3 = f.primes().filter(|p| p % 4 == class && *p <= 3).count() as f64;
        let ok = |count: f64, t: f64| (count - 0.5 * t.ln().ln()).abs() < slack;
        if !ok(below_3, 3.0) {
            return Ok(false);
        }
        let mut count = below_3;
        for &p in &jumps {
            // just before the jump, then at it
            if !ok(count, p as f64) {
                return Ok(false);
            }
            count += 1.0;
            if !ok(count, p as f64) {
                return Ok(false);
            }
        }
        if !ok(count, m as f64) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the truncation bound reaches `m^{1/2 - eps/5}` for one `m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationCheck {
    pub m: u64,
    pub cond_i: bool,
    pub cond_ii: bool,
    /// The prime `q_i` witnessing (iii), tail variant.
    pub witness_q: Option<u64>,
    /// The split bound at the witness.
    pub assembled: Option<f64>,
    pub target: f64,
    /// `P(m)^{1/2} (10 w)^{2w} <= m^{eps/20}` for the cofactor at the witness.
    pub explicit_factor_ok: bool,
}

impl TruncationCheck {
    /// All hypotheses of the implication hold.
    pub fn hypotheses_met(&self) -> bool {
        self.cond_i && self.cond_ii && self.witness_q.is_some() && self.explicit_factor_ok
    }

    pub fn meets_target(&self) -> Option<bool> {
        self.assembled.map(|a| a <= self.target)
    }
}

/// Evaluates the truncation argument for `m <= x`: conditions (i)-(iii),
/// the bound obtained by splitting at the (iii) witness, and whether the
/// explicit factor is small enough for that bound to fall below the target.
pub fn truncation_check(f: &Factorization, x: f64, eps: f64) -> Result<TruncationCheck> {
    let m = f.m();
    let cond_i = check_i(f, x)?;
    let cond_ii = check_ii(f, x)?;
    let witness_q = condition_iii_witness(f, x, eps, Variant::Tail)?;
    let target = (m as f64).powf(0.5 - eps / 5.0);
    let split = witness_q.and_then(|q| odd_index_splits(f).into_iter().find(|s| s.0 == q));
    let (assembled, explicit_factor_ok) = match split {
        Some((_, m1)) => {
            let w = f.omega() - m1.omega();
            let factor = (f.powerful_part() as f64).sqrt() * (10.0 * w as f64).powi(2 * w as i32);
            (
                Some(split_bound::<f64>(f, &m1)),
                factor <= (m as f64).powf(eps / 20.0),
            )
        }
        None => (None, false),
    };
    Ok(TruncationCheck {
        m,
        cond_i,
        cond_ii,
        witness_q,
        assembled,
        target,
        explicit_factor_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::factorize;

    #[test]
    fn conditions_i_ii() {
        assert!(!check_i(&factorize(72), 1e6).unwrap());
        assert!(check_i(&factorize(65), 1e6).unwrap());
        assert!(!check_ii(&factorize(30030), 1e6).unwrap());
        assert!(check_ii(&factorize(65), 1e6).unwrap());
        assert!(check_i(&factorize(65), 15.0).is_err());
    }

    #[test]
    fn condition_iii_examples() {
        let f = factorize(3 * 1009);
        for v in Variant::ALL {
            assert!(!condition_iii(&f, 1e6, 0.1, v).unwrap());
        }
        let f = factorize(700_021);
        assert_eq!(f.factors(), &[(7, 1), (100_003, 1)]);
        for v in Variant::ALL {
            assert!(condition_iii(&f, 1e6, 0.5, v).unwrap());
        }
        assert!(!condition_iii(&factorize(65), 1e6, 0.5, Variant::Tail).unwrap());
        assert!(condition_iii(&f, 1e6, 1.5, Variant::Tail).is_err());
    }

    #[test]
    fn variants_differ_on_powerful_parts() {
        // m = 3^4 * 1019: the tail is empty but D(m, 1019) = 81
        let f = factorize(81 * 1019);
        assert!(condition_iii(&f, 100.0, 0.5, Variant::Tail).unwrap());
        assert!(!condition_iii(&f, 100.0, 0.5, Variant::Smooth).unwrap());
    }

    #[test]
    fn only_odd_indices_count() {
        // q-list (1019, 7): q_1 = 1019 fails x^eps; q_2 is even-indexed
        let f = factorize(7 * 1019);
        assert!(!condition_iii(&f, 1e7, 0.5, Variant::Tail).unwrap());
        assert!(condition_iii(&f, 1e4, 0.5, Variant::Tail).unwrap());
    }

    #[test]
    fn claimed_range() {
        assert!(eps_in_claimed_range(1e6, 0.5));
        assert!(!eps_in_claimed_range(1e4, 0.2));
    }

    #[test]
    fn condition_b_breakpoints() {
        assert!(condition_b(&factorize(1), 1e6).unwrap());
        // five small primes = 3 mod 4 push omega_3 far above log log t
        let f = factorize(3 * 7 * 11 * 19 * 23 * 31 * 43);
        assert!(!condition_b(&f, 1e6).unwrap());
        assert!(condition_b(&factorize(5 * 1_000_003), 1e6).unwrap());
    }

    #[test]
    fn truncation_at_desk_scale() {
        let c = truncation_check(&factorize(700_021), 1e6, 0.5).unwrap();
        assert_eq!(c.witness_q, Some(100_003));
        assert!(c.cond_i && c.cond_ii);
        // the explicit factor (10 w)^{2w} dwarfs m^{eps/20} here
        assert!(!c.explicit_factor_ok);
        assert!(!c.hypotheses_met());
        assert!(c.assembled.unwrap() > 0.0);
    }
}
