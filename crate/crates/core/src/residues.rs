//! Squares modulo `m`, the avoidance predicate `(A - A) ∩ R_m = {0}`, and the
//! Cayley-type graph whose cliques are exactly the avoiding sets.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::numtheory::{factorize, jacobi, Factorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidueMode {
    Enumerated,
    CrtBacked,
}

/// Membership structure for `R_m = { a^2 : a in Z_m }`.
#[derive(Clone, Debug)]
pub struct ResidueSet {
    m: u64,
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Table(BitSet),
    /// Odd prime divisors of a squarefree modulus.
    Primes(Vec<u64>),
}

impl ResidueSet {
    /// Largest modulus whose residue table is materialized.
    pub const ENUMERATION_LIMIT: u64 = 1 << 25;

    /// Enumerates when `m` is small enough, otherwise falls back to the
    /// per-prime characterization, which needs `m` squarefree.
    pub fn new(m: u64) -> Result<Self> {
        if m <= Self::ENUMERATION_LIMIT {
            Self::enumerated(m)
        } else {
            Self::crt_backed(&factorize(m))
        }
    }

    pub fn enumerated(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ModulusTooSmall { m, min: 1 });
        }
        if m > Self::ENUMERATION_LIMIT {
            return Err(Error::ModulusTooLarge {
                m,
                limit: Self::ENUMERATION_LIMIT,
            });
        }
        Ok(Self {
            m,
            repr: Repr::Table(square_table(m)),
        })
    }

    /// For squarefree `m`: `a` is a square iff it is a square (or zero)
    /// modulo every odd prime divisor. The prime 2 imposes nothing.
    pub fn crt_backed(f: &Factorization) -> Result<Self> {
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree(f.m()));
        }
        Ok(Self {
            m: f.m(),
            repr: Repr::Primes(f.primes().filter(|&p| p != 2).collect()),
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn mode(&self) -> ResidueMode {
        match self.repr {
            Repr::Table(_) => ResidueMode::Enumerated,
            Repr::Primes(_) => ResidueMode::CrtBacked,
        }
    }

    #[inline]
    pub fn contains(&self, a: u64) -> bool {
        let a = a % self.m;
        match &self.repr {
            Repr::Table(t) => t.contains(a as usize),
            Repr::Primes(ps) => ps.iter().all(|&p| jacobi(a % p, p) >= 0),
        }
    }

    /// The table, when enumerated.
    pub fn table(&self) -> Option<&BitSet> {
        match &self.repr {
            Repr::Table(t) => Some(t),
            Repr::Primes(_) => None,
        }
    }

    /// Number of squares. Computed multiplicatively in CRT mode.
    pub fn count(&self) -> u64 {
        match &self.repr {
            Repr::Table(t) => t.count() as u64,
            Repr::Primes(ps) => ps.iter().map(|p| (p + 1) / 2).product(),
        }
    }

    /// Sorted members; only for enumerated sets.
    pub fn members(&self) -> Option<Vec<u64>> {
        self.table().map(|t| t.iter().map(|a| a as u64).collect())
    }

    /// True iff every difference of two distinct elements is a non-square.
    pub fn is_avoiding(&self, set: &[u64]) -> Result<bool> {
        let m = self.m;
        if let Some(&a) = set.iter().find(|&&a| a >= m) {
            return Err(Error::ElementOutOfRange { a, m });
        }
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                let d = (a + m - b) % m;
                if d == 0 || self.contains(d) || self.contains(m - d) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn square_table(m: u64) -> BitSet {
    let mut t = BitSet::new(m as usize);
    // (a + 1)^2 = a^2 + 2a + 1; squares of a and m - a coincide
    let mut sq = 0u64;
    for a in 0..=m / 2 {
        t.insert(sq as usize);
        sq = (sq + 2 * a + 1) % m;
    }
    t
}

/// `R_m` for `m >= 1`.
pub fn residue_set(m: u64) -> Result<ResidueSet> {
    ResidueSet::new(m)
}

/// Checks `(A - A) ∩ R_m = {0}`. Squarefree moduli use per-prime symbols, so
/// `m` may be far beyond the enumeration limit. Repeated elements make a set
/// non-avoiding (their difference is 0 but they are not distinct residues).
pub fn is_avoiding(set: &[u64], m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::ModulusTooSmall { m, min: 1 });
    }
    if let Some(&a) = set.iter().find(|&&a| a >= m) {
        return Err(Error::ElementOutOfRange { a, m });
    }
    if set.len() <= 1 {
        return Ok(true);
    }
    let f = factorize(m);
    let r = if f.is_squarefree() {
        ResidueSet::crt_backed(&f)?
    } else {
        ResidueSet::enumerated(m)?
    };
    r.is_avoiding(set)
}

/// Undirected graph on `Z_m`: `{a, b}` is an edge iff neither `a - b` nor
/// `b - a` is a square. Translation-invariant, so the adjacency matrix is
/// circulant and is stored by its first row (the connection set).
#[derive(Clone, Debug)]
pub struct AvoidanceGraph {
    m: u64,
    connection: BitSet,
}

impl AvoidanceGraph {
    pub const LIMIT: u64 = 1 << 17;

    pub fn new(m: u64) -> Result<Self> {
        if m > Self::LIMIT {
            return Err(Error::ModulusTooLarge { m, limit: Self::LIMIT });
        }
        let r = ResidueSet::enumerated(m)?;
        Ok(Self::from_residues(&r))
    }

    pub(crate) fn from_residues(r: &ResidueSet) -> Self {
        let m = r.m();
        let table = r.table().expect("enumerated residue set");
        let mut connection = BitSet::new(m as usize);
        for d in 1..m {
            if !table.contains(d as usize) && !table.contains((m - d) as usize) {
                connection.insert(d as usize);
            }
        }
        Self { m, connection }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Differences `d` joining `0` to `d`; also the neighborhood of 0.
    pub fn connection_set(&self) -> &BitSet {
        &self.connection
    }

    pub fn degree(&self) -> usize {
        self.connection.count()
    }

    #[inline]
    pub fn has_edge(&self, a: u64, b: u64) -> bool {
        let m = self.m;
        a != b && self.connection.contains(((b + m - a % m) % m) as usize)
    }

    /// Adjacency row of `a`: the connection set translated by `a`.
    pub fn row(&self, a: u64) -> BitSet {
        let mut row = BitSet::new(self.m as usize);
        for d in self.connection.iter() {
            row.insert(((a + d as u64) % self.m) as usize);
        }
        row
    }

    pub fn neighbors(&self, a: u64) -> impl Iterator<Item = u64> + '_ {
        let m = self.m;
        self.connection.iter().map(move |d| (a + d as u64) % m)
    }

    pub fn edge_count(&self) -> u64 {
        self.m * self.degree() as u64 / 2
    }

    pub fn is_clique(&self, set: &[u64]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }
}

pub fn avoidance_graph(m: u64) -> Result<AvoidanceGraph> {
    AvoidanceGraph::new(m)
}

/// For `m = 2 m1` with `m1` odd, returns `m1`; maximum avoiding sizes agree.
pub fn odd_part_reduction(m: u64) -> Result<u64> {
    if m % 4 != 2 {
        return Err(Error::NotTwiceOdd(m));
    }
    Ok(m / 2)
}

/// Lifts an avoiding set mod odd `m1` to `Z_{2 m1}` as `{(0, x)}` under CRT.
pub fn lift_from_odd_part(set: &[u64], m1: u64) -> Vec<u64> {
    let mut out: Vec<u64> = set
        .iter()
        .map(|&x| if x % 2 == 0 { x } else { x + m1 })
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_examples() {
        assert_eq!(residue_set(5).unwrap().members().unwrap(), vec![0, 1, 4]);
        assert_eq!(residue_set(9).unwrap().members().unwrap(), vec![0, 1, 4, 7]);
        let r65 = residue_set(65).unwrap();
        assert_eq!(r65.count(), 21);
        let crt = ResidueSet::crt_backed(&factorize(65)).unwrap();
        assert_eq!(crt.count(), 21);
        assert_eq!(crt.mode(), ResidueMode::CrtBacked);
        assert!((0..65).all(|a| crt.contains(a) == r65.contains(a)));
        assert_eq!(residue_set(4).unwrap().members().unwrap(), vec![0, 1]);
        assert_eq!(residue_set(1).unwrap().members().unwrap(), vec![0]);
    }

    #[test]
    fn large_moduli() {
        assert!(ResidueSet::new((1 << 26) * 9).is_err());
        let m = 1_000_003u64 * 1_000_033;
        let r = ResidueSet::new(m).unwrap();
        assert_eq!(r.mode(), ResidueMode::CrtBacked);
        assert!(r.contains(4) && r.contains(0));
    }

    #[test]
    fn avoiding_examples() {
        assert!(is_avoiding(&[0, 3, 6], 9).unwrap());
        assert!(is_avoiding(&[0], 7).unwrap());
        assert!(!is_avoiding(&[0, 1], 5).unwrap());
        assert!(!is_avoiding(&[2, 2], 5).unwrap());
        assert!(matches!(is_avoiding(&[0, 9], 9), Err(Error::ElementOutOfRange { a: 9, m: 9 })));
    }

    #[test]
    fn graph_examples() {
        let g7 = avoidance_graph(7).unwrap();
        assert_eq!(g7.degree(), 0);
        let g5 = avoidance_graph(5).unwrap();
        assert!(g5.has_edge(0, 2));
        assert!(!g5.has_edge(0, 1));
        let g9 = avoidance_graph(9).unwrap();
        assert!(g9.is_clique(&[0, 3, 6]));
        assert!(!g9.has_edge(4, 4));
        assert!(avoidance_graph(AvoidanceGraph::LIMIT + 1).is_err());
        assert_eq!(g5.row(1).iter().collect::<Vec<_>>(), vec![3, 4]);
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(odd_part_reduction(130).unwrap(), 65);
        assert_eq!(odd_part_reduction(10).unwrap(), 5);
        assert_eq!(odd_part_reduction(6).unwrap(), 3);
        assert!(odd_part_reduction(9).is_err());
        assert!(odd_part_reduction(12).is_err());
        let lifted = lift_from_odd_part(&[0, 2], 5);
        assert!(is_avoiding(&lifted, 10).unwrap());
    }

    #[test]
    fn prime_residue_counts() {
        for p in crate::numtheory::primes_up_to(10_000).into_iter().skip(1) {
            assert_eq!(residue_set(p).unwrap().count(), (p + 1) / 2);
        }
    }
}
