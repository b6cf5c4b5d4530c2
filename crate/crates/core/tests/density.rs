mod common;

use rand::{rngs::StdRng, Rng, SeedableRng};
use sqavoid::density::{
    condition_iii, density_scan, omega_vector, pattern_probability, poisson_pmf, tv_distance_empirical, Variant,
};
use sqavoid::numtheory::{factorize, primes_in_class, ResidueClass};
use sqavoid::DensityReportF64;

#[test]
fn condition_iii_is_monotone_in_eps() {
    let epss = [0.9, 0.7, 0.5, 0.3, 0.2, 0.1, 0.05];
    for variant in Variant::ALL {
        for m in 1..=10_000u64 {
            let f = factorize(m);
            let holds: Vec<bool> = epss
                .iter()
                .map(|&e| condition_iii(&f, 1e4, e, variant).unwrap())
                .collect();
            // once it holds for some eps it holds for every smaller one
            assert!(holds.windows(2).all(|w| !w[0] || w[1]), "m = {m}, {variant:?}: {holds:?}");
        }
        let fracs: Vec<f64> = epss
            .iter()
            .map(|&e| {
                let r: DensityReportF64 = density_scan(10_000, e, 1.0, variant).unwrap();
                r.frac_iii()
            })
            .collect();
        assert!(fracs.windows(2).all(|w| w[0] >= w[1]), "{fracs:?}");
    }
}

#[test]
fn tv_is_a_distance_and_marginals_are_smaller() {
    let x = 200_000;
    let a = primes_in_class(10.0, 60.0, ResidueClass::Three).unwrap();
    let b = primes_in_class(60.0, 400.0, ResidueClass::Three).unwrap();
    let c = primes_in_class(400.0, 3000.0, ResidueClass::Three).unwrap();
    let d = primes_in_class(2.0, 200.0, ResidueClass::One).unwrap();
    let joint: f64 = tv_distance_empirical(x, &[a.clone(), b.clone(), c.clone()]).unwrap();
    for sets in [vec![a.clone()], vec![b.clone()], vec![c.clone()], vec![a.clone(), c.clone()], vec![b, c]] {
        let marginal: f64 = tv_distance_empirical(x, &sets).unwrap();
        assert!((0.0..=1.0).contains(&marginal));
        assert!(marginal <= joint + 1e-12, "{marginal} > {joint}");
    }
    let mixed: f64 = tv_distance_empirical(x, &[a, d]).unwrap();
    assert!((0.0..=1.0).contains(&mixed));
}

/// Powerful part by trial division.
fn powerful_part(mut m: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= m {
        let mut pe = 1;
        while m % p == 0 {
            m /= p;
            pe *= p;
        }
        if pe > p {
            out *= pe;
        }
        p += 1;
    }
    out
}

#[test]
fn failures_of_i_and_ii() {
    // (ii) is rare already; (i) decays only like 1/sqrt(log x)
    let mut scaled = Vec::new();
    for x in [10_000u64, 100_000, 1_000_000] {
        let r: DensityReportF64 = density_scan(x, 0.3, 1.0, Variant::Tail).unwrap();
        let log_x = (x as f64).ln();
        let direct = (1..=x).filter(|&m| powerful_part(m) as f64 > log_x).count() as u64;
        assert_eq!(r.fail_i, direct, "x = {x}");
        assert!(r.frac_ii() < 0.05, "{}", r.frac_ii());
        scaled.push(r.frac_i() * log_x.sqrt());
    }
    assert!(scaled.iter().all(|&s| s < 1.0), "{scaled:?}");
    let r: DensityReportF64 = density_scan(1_000_000, 0.3, 1.0, Variant::Smooth).unwrap();
    assert_eq!(r.fail_i, 189_428);
}

#[test]
fn omega_vectors_never_exceed_omega() {
    let sets = vec![
        primes_in_class(2.0, 30.0, ResidueClass::Three).unwrap(),
        primes_in_class(30.0, 500.0, ResidueClass::Three).unwrap(),
        primes_in_class(1.0, 100.0, ResidueClass::One).unwrap(),
        primes_in_class(500.0, 10_000.0, ResidueClass::All).unwrap(),
    ];
    for m in 1..=10_000u64 {
        let f = factorize(m);
        let v = omega_vector(&f, &sets).unwrap();
        assert!(v.iter().sum::<u32>() as usize <= f.omega(), "m = {m}");
    }
}

/// `P(pattern)` for independent Poisson variables with the given means.
fn pattern_with(l: [f64; 4]) -> f64 {
    poisson_pmf(l[0], 1) * poisson_pmf(l[1], 0) * poisson_pmf(l[2], 1) * poisson_pmf(l[3], 0)
}

#[test]
fn pattern_probability_lower_bound() {
    // common mean log(theta)/2: closed form and the bound on [3, 50]
    for i in 0..=94 {
        let theta = 3.0 + 0.5 * i as f64;
        let l = theta.ln() / 2.0;
        let p: f64 = pattern_probability(l);
        assert!((p - l * l * (-4.0 * l).exp()).abs() < 1e-12);
        assert!(p >= theta.powi(-4));
    }
    // means anywhere in (L/3, L), L = log(theta): the slots holding 1 give
    // f(l) = l e^-l >= min(f(L/3), f(L)) and the slots holding 0 give more
    // than e^-L, so the bound holds iff that minimum is at least e^-L
    let margin = |theta: f64| {
        let big = theta.ln();
        let f = |l: f64| l * (-l).exp();
        f(big / 3.0).min(f(big)) - (-big).exp()
    };
    let (mut lo, mut hi) = (2.0, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if margin(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let threshold = hi;
    // closed form: L = 3 W(2) / 2 with W the Lambert function
    let mut w = 0.85f64;
    for _ in 0..50 {
        w -= (w * w.exp() - 2.0) / ((w + 1.0) * w.exp());
    }
    assert!((threshold - (1.5 * w).exp()).abs() < 1e-9);
    assert!(threshold > 3.59 && threshold < 3.6);

    let mut rng = StdRng::seed_from_u64(4);
    for i in 0..=100 {
        let theta = threshold + (50.0 - threshold) * i as f64 / 100.0;
        let big = theta.ln();
        for _ in 0..2000 {
            let l = [(); 4].map(|_| rng.gen_range(big / 3.0..big));
            assert!(pattern_with(l) >= theta.powi(-4), "theta = {theta}, {l:?}");
        }
    }
    // just below the threshold the corner (L/3, L, L/3, L) breaks the bound
    for theta in [3.0, 3.3, threshold - 1e-3] {
        let big = f64::ln(theta);
        let corner = [big / 3.0 + 1e-9, big - 1e-9, big / 3.0 + 1e-9, big - 1e-9];
        assert!(pattern_with(corner) < theta.powi(-4), "theta = {theta}");
    }
}
