mod common;

use proptest::prelude::*;
use sqavoid::numtheory::{factorize, legendre, primes_up_to};
use sqavoid::residues::ResidueSet;
use sqavoid::{avoidance_graph, is_avoiding, residue_set};

fn modulus_and_set() -> impl Strategy<Value = (u64, Vec<u64>)> {
    (2u64..=2000).prop_flat_map(|m| (Just(m), prop::collection::vec(0..m, 1..8)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn avoiding_iff_clique((m, set) in modulus_and_set()) {
        let mut set = set;
        set.sort_unstable();
        set.dedup();
        let g = avoidance_graph(m).unwrap();
        prop_assert_eq!(is_avoiding(&set, m).unwrap(), g.is_clique(&set));
        prop_assert_eq!(is_avoiding(&set, m).unwrap(), common::avoids(&set, m, &common::squares(m)));
    }

    #[test]
    fn translation_invariance((m, set) in modulus_and_set(), t in 0u64..2000) {
        let mut set = set;
        set.sort_unstable();
        set.dedup();
        let shifted: Vec<u64> = set.iter().map(|&a| (a + t) % m).collect();
        prop_assert_eq!(is_avoiding(&set, m).unwrap(), is_avoiding(&shifted, m).unwrap());
    }

    #[test]
    fn unit_square_dilation(pi in 1usize..300, set in prop::collection::vec(0u64..100_000, 1..6), s in 1u64..100_000) {
        let p = primes_up_to(2000)[pi];
        let s = (s % (p - 1)) + 1;
        let u = s * s % p;
        let mut set: Vec<u64> = set.into_iter().map(|a| a % p).collect();
        set.sort_unstable();
        set.dedup();
        let dilated: Vec<u64> = set.iter().map(|&a| a * u % p).collect();
        prop_assert_eq!(is_avoiding(&set, p).unwrap(), is_avoiding(&dilated, p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn crt_membership_matches_legendre(start in 3u64..=99_900) {
        let m = (start..).find(|&m| m % 2 == 1 && factorize(m).is_squarefree()).unwrap();
        let f = factorize(m);
        let r = ResidueSet::enumerated(m).unwrap();
        let c = ResidueSet::crt_backed(&f).unwrap();
        for a in 0..m {
            let by_primes = f.primes().all(|p| legendre(a as i64, p).unwrap() >= 0);
            prop_assert_eq!(r.contains(a), by_primes, "a = {}", a);
            prop_assert_eq!(c.contains(a), by_primes, "a = {}", a);
        }
    }
}

#[test]
fn residue_counts_of_primes() {
    for p in primes_up_to(10_000).into_iter().skip(1) {
        assert_eq!(residue_set(p).unwrap().count(), (p + 1) / 2);
    }
}

#[test]
fn tables_match_direct_squaring() {
    for m in 1..=3000u64 {
        let sq = common::squares(m);
        let r = residue_set(m).unwrap();
        for a in 0..m {
            assert_eq!(r.contains(a), sq[a as usize], "{a} mod {m}");
        }
    }
}
