//! Explicit avoiding sets: the Ramsey halving construction for primes
//! `p = 1 mod 4`, transitive chains in the quadratic-residue tournament for
//! `q = 3 mod 4`, the antidiagonal two-prime set, the `p^2` grid, a fixed
//! seven-element set in `Z_65`, and the CRT product over a factorization.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::numtheory::{crt, is_prime, jacobi, least_nonresidue, Factorization};
use crate::real::Real;
use crate::residues::is_avoiding;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Cohen,
    TwoPrime,
    PSquare,
    Ruzsa65,
    Product,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionOutput<F> {
    pub m: u64,
    pub method: Method,
    pub set: Vec<u64>,
    /// Size the method promises analytically.
    pub guaranteed_size: F,
}

impl<F: Real> ConstructionOutput<F> {
    fn checked(m: u64, method: Method, mut set: Vec<u64>, guaranteed_size: F) -> Self {
        set.sort_unstable();
        assert!(
            is_avoiding(&set, m).expect("construction stays inside Z_m"),
            "{method:?} produced a non-avoiding set modulo {m}"
        );
        Self {
            m,
            method,
            set,
            guaranteed_size,
        }
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }
}

/// Squares modulo an odd prime as a bit table, with 64-bit window reads of
/// the shifted table `{u : u - v is a square}`.
struct SquareTable {
    p: u64,
    bits: BitSet,
}

impl SquareTable {
    fn new(p: u64) -> Self {
        let mut bits = BitSet::new(p as usize);
        let mut sq = 0u64;
        for a in 0..=p / 2 {
            bits.insert(sq as usize);
            sq += 2 * a + 1;
            if sq >= p {
                sq -= p;
            }
        }
        Self { p, bits }
    }

    #[inline]
    fn contains(&self, d: u64) -> bool {
        self.bits.contains(d as usize)
    }

    /// Bits `i = 0..64` of the result say whether `(64 w + i - v) mod p` is
    /// a square. Positions at or beyond `p` come back as garbage and must be
    /// masked by the caller.
    #[inline]
    fn window(&self, w: usize, v: u64) -> u64 {
        let p = self.p;
        let start = (64 * w as u64 + p - v) % p;
        if start + 64 <= p {
            self.read(start, 64)
        } else {
            let head = p - start;
            let lo = self.read(start, head);
            let hi = self.read(0, 64 - head);
            lo | (hi << head)
        }
    }

    /// `n <= 64` bits starting at bit `o`, with `o + n <= p`.
    #[inline]
    fn read(&self, o: u64, n: u64) -> u64 {
        if n == 0 {
            return 0;
        }
        let words = self.bits.words();
        let i = (o >> 6) as usize;
        let s = o & 63;
        let mut x = words[i] >> s;
        if s != 0 && i + 1 < words.len() {
            x |= words[i + 1] << (64 - s);
        }
        if n < 64 {
            x &= (1u64 << n) - 1;
        }
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// Recurse into `{u : u - v is a nonzero square}`.
    Square,
    /// Recurse into `{u : u - v is a nonsquare}`.
    NonSquare,
}

/// Pivot sequence of the halving recursion over all of `Z_p`: take the
/// smallest live vertex, split the others by whether their difference to it
/// is a square, keep the side chosen by `pick(square_count, nonsquare_count)`.
/// Returns the pivots with their sides and the final vertex.
fn halving(table: &SquareTable, pick: impl Fn(usize, usize) -> Side) -> (Vec<(u64, Side)>, u64) {
    let p = table.p;
    let mut pivots = Vec::new();
    let mut live = BitSet::full(p as usize);
    let mut live_count = p as usize;
    // Word-parallel while dense, explicit list once sparse.
    while live_count > 64 && live_count * 64 > p as usize {
        let v = live.first().expect("nonempty");
        live.remove(v as usize);
        live_count -= 1;
        let v = v as u64;
        let mut squares = 0usize;
        let nwords = live.words().len();
        for w in 0..nwords {
            let word = live.words()[w];
            if word != 0 {
                squares += (word & table.window(w, v)).count_ones() as usize;
            }
        }
        let side = pick(squares, live_count - squares);
        for w in 0..nwords {
            let word = live.words()[w];
            if word != 0 {
                let mask = table.window(w, v);
                live.words_mut()[w] = match side {
                    Side::Square => word & mask,
                    Side::NonSquare => word & !mask,
                };
            }
        }
        live_count = match side {
            Side::Square => squares,
            Side::NonSquare => live_count - squares,
        };
        pivots.push((v, side));
    }
    let live: Vec<u64> = live.iter().map(|u| u as u64).collect();
    let (rest, last) = halve_list(live, |d| table.contains(d), pick);
    pivots.extend(rest);
    (pivots, last)
}

/// The halving on an increasing list of points; `square(d)` says whether a
/// positive distance `d` between two of them is a nonzero square.
fn halve_list(
    mut live: Vec<u64>,
    square: impl Fn(u64) -> bool,
    pick: impl Fn(usize, usize) -> Side,
) -> (Vec<(u64, Side)>, u64) {
    let mut pivots = Vec::new();
    let mut scratch = Vec::with_capacity(live.len());
    loop {
        let v = live[0];
        if live.len() == 1 {
            return (pivots, v);
        }
        let squares = live[1..].iter().filter(|&&u| square(u - v)).count();
        let side = pick(squares, live.len() - 1 - squares);
        scratch.clear();
        scratch.extend(
            live[1..]
                .iter()
                .copied()
                .filter(|&u| square(u - v) == (side == Side::Square)),
        );
        std::mem::swap(&mut live, &mut scratch);
        pivots.push((v, side));
    }
}

fn require_class(p: u64, class: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != class {
        return Err(Error::WrongClass { p, expected: class });
    }
    Ok(())
}

/// Avoiding set in `Z_p`, `p = 1 mod 4`, of size at least `log p / log 4`,
/// from a monochromatic clique of the two-coloured complete graph on `Z_p`.
/// Above this size the full halving over `Z_p` is only a fallback.
const HALVING_LIMIT: u64 = 1 << 22;
/// Window `[0, W)` scanned by the greedy chain for large `p`.
const GREEDY_WINDOW: u64 = 1 << 18;

pub fn cohen_set<F: Real>(p: u64) -> Result<ConstructionOutput<F>> {
    require_class(p, 1)?;
    let guarantee = F::from_int(p).ln() / (F::lit(2.0) * F::lit(2.0).ln());
    if p > HALVING_LIMIT {
        let set = greedy_nonsquare_chain(p);
        if F::from_int(set.len() as u64) >= guarantee {
            return Ok(ConstructionOutput::checked(p, Method::Cohen, set, guarantee));
        }
    }
    let table = SquareTable::new(p);
    let (pivots, last) = halving(&table, |sq, non| if sq >= non { Side::Square } else { Side::NonSquare });
    // Pivots that kept the same side are pairwise joined in that colour, and
    // the final vertex is joined to all of them.
    let (mut square_clique, mut nonsquare_clique): (Vec<u64>, Vec<u64>) = (Vec::new(), Vec::new());
    for (v, side) in pivots {
        match side {
            Side::Square => square_clique.push(v),
            Side::NonSquare => nonsquare_clique.push(v),
        }
    }
    square_clique.push(last);
    nonsquare_clique.push(last);
    let set = if nonsquare_clique.len() >= square_clique.len() {
        nonsquare_clique
    } else {
        // multiplying by a nonresidue swaps the colours
        let xi = least_nonresidue(p)?;
        square_clique
            .into_iter()
            .map(|a| ((a as u128 * xi as u128) % p as u128) as u64)
            .collect()
    };
    Ok(ConstructionOutput::checked(p, Method::Cohen, set, guarantee))
}

/// Chain `a_1, ..., a_k` in `Z_q`, `q = 3 mod 4`, with `a_s - a_t` a nonzero
/// square for all `s < t` and `k >= floor(log2 q) + 1`.
/// Take the least live point of `[0, W)`, keep the points at a nonsquare
/// distance from it, repeat. Distances stay below `W`, so only `W` symbols
/// are needed; `-1` is a square, so the sign of a distance does not matter.
/// Typically about `log2 W` points, with no proven floor.
fn greedy_nonsquare_chain(p: u64) -> Vec<u64> {
    let w = GREEDY_WINDOW.min(p);
    let nonsquare: Vec<bool> = (0..w).map(|d| jacobi(d, p) == -1).collect();
    let mut live: Vec<u64> = (0..w).collect();
    let mut chain = Vec::new();
    while let Some((&v, rest)) = live.split_first() {
        chain.push(v);
        live = rest.iter().copied().filter(|&u| nonsquare[(u - v) as usize]).collect();
    }
    chain
}

pub fn transitive_chain(q: u64) -> Result<Vec<u64>> {
    require_class(q, 3)?;
    let table = SquareTable::new(q);
    Ok(order_chain(halving(&table, tournament_side)))
}

/// A chain inside `[0, w)` only; it has at least `floor(log2 w) + 1` points
/// since every pivot keeps the larger half.
fn transitive_chain_in(q: u64, w: u64) -> Vec<u64> {
    let w = w.min(q);
    let square: Vec<bool> = (0..w).map(|d| jacobi(d, q) == 1).collect();
    order_chain(halve_list((0..w).collect(), |d| square[d as usize], tournament_side))
}

fn tournament_side(sq: usize, non: usize) -> Side {
    if non >= sq {
        Side::NonSquare
    } else {
        Side::Square
    }
}

/// Pivots kept on the nonsquare side come first, then the last point, then
/// the square-side pivots in reverse.
fn order_chain((pivots, last): (Vec<(u64, Side)>, u64)) -> Vec<u64> {
    let mut front = Vec::new();
    let mut back = Vec::new();
    for (v, side) in pivots {
        match side {
            Side::NonSquare => front.push(v),
            Side::Square => back.push(v),
        }
    }
    front.push(last);
    front.extend(back.into_iter().rev());
    front
}

pub fn two_prime_set<F: Real>(q1: u64, q2: u64) -> Result<ConstructionOutput<F>> {
    require_class(q1, 3)?;
    require_class(q2, 3)?;
    if q1 <= q2 {
        return Err(Error::Parameter {
            name: "q1",
            value: q1 as f64,
            allowed: "greater than q2",
        });
    }
    let c2 = transitive_chain(q2)?;
    // only the first |c2| points of the longer chain are used
    let c1 = if q1 > HALVING_LIMIT {
        require_class(q1, 3)?;
        transitive_chain_in(q1, 1 << (c2.len() - 1))
    } else {
        transitive_chain(q1)?
    };
    Ok(two_prime_from_chains(q1, &c1, q2, &c2))
}

/// [`two_prime_set`] with precomputed chains; both are truncated to the
/// shorter length.
pub fn two_prime_from_chains<F: Real>(q1: u64, chain1: &[u64], q2: u64, chain2: &[u64]) -> ConstructionOutput<F> {
    let k = chain1.len().min(chain2.len());
    let set = (0..k)
        .map(|s| crt(&[(chain1[s], q1), (chain2[k - 1 - s], q2)]).expect("distinct primes").0)
        .collect();
    let guarantee = F::from_int(q2).ln() / F::lit(2.0).ln();
    ConstructionOutput::checked(q1 * q2, Method::TwoPrime, set, guarantee)
}

/// `{0, p, ..., (p - 1) p}` in `Z_{p^2}`.
pub fn p_square_set<F: Real>(p: u64) -> Result<ConstructionOutput<F>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = p.checked_mul(p).ok_or(Error::ModulusTooLarge { m: p, limit: u32::MAX as u64 })?;
    let set = (0..p).map(|j| j * p).collect();
    Ok(ConstructionOutput::checked(m, Method::PSquare, set, F::from_int(p)))
}

/// Lexicographically first seven-element avoiding set in `Z_65` containing 0
/// (seven is the maximum there).
pub const RUZSA_65: [u64; 7] = [0, 2, 5, 22, 24, 43, 46];

pub fn ruzsa65<F: Real>() -> ConstructionOutput<F> {
    ConstructionOutput::checked(65, Method::Ruzsa65, RUZSA_65.to_vec(), F::lit(7.0))
}

/// One CRT component of a product construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component<F> {
    pub modulus: u64,
    pub set: Vec<u64>,
    pub method: Option<Method>,
    pub guaranteed_size: F,
}

/// Per-factor pieces of [`product_set`]: Cohen sets for primes `1 mod 4`,
/// two-prime sets for consecutive pairs of primes `3 mod 4` in decreasing
/// order, and `{0}` for the prime 2, for prime powers and for an unpaired
/// prime `3 mod 4`.
pub fn product_components<F: Real>(f: &Factorization) -> Result<Vec<Component<F>>> {
    let mut parts = Vec::new();
    let singleton = |modulus| Component {
        modulus,
        set: vec![0],
        method: None,
        guaranteed_size: F::one(),
    };
    let mut threes = Vec::new();
    for &(p, e) in f.factors() {
        if e >= 2 || p == 2 {
            parts.push(singleton(p.pow(e)));
        } else if p % 4 == 1 {
            let c = cohen_set::<F>(p)?;
            parts.push(Component {
                modulus: p,
                set: c.set,
                method: Some(Method::Cohen),
                guaranteed_size: c.guaranteed_size,
            });
        } else {
            threes.push(p);
        }
    }
    threes.reverse();
    let mut pairs = threes.chunks_exact(2);
    for pair in &mut pairs {
        let c = two_prime_set::<F>(pair[0], pair[1])?;
        parts.push(Component {
            modulus: c.m,
            set: c.set,
            method: Some(Method::TwoPrime),
            guaranteed_size: c.guaranteed_size,
        });
    }
    if let [q] = pairs.remainder() {
        parts.push(singleton(*q));
    }
    parts.sort_by_key(|c| c.modulus);
    Ok(parts)
}

/// CRT product of the per-factor avoiding sets.
pub fn product_set<F: Real>(f: &Factorization) -> Result<ConstructionOutput<F>> {
    let parts = product_components::<F>(f)?;
    Ok(assemble(f.m(), &parts))
}

fn assemble<F: Real>(m: u64, parts: &[Component<F>]) -> ConstructionOutput<F> {
    let mut set = vec![(0u64, 1u64)];
    for c in parts {
        set = set
            .iter()
            .flat_map(|&acc| {
                c.set
                    .iter()
                    .map(move |&r| crt(&[acc, (r, c.modulus)]).expect("coprime components"))
            })
            .collect();
    }
    let mut set: Vec<u64> = set.into_iter().map(|(x, _)| x).collect();
    set.sort_unstable();
    let guarantee = parts.iter().map(|c| c.guaranteed_size).fold(F::one(), |a, b| a * b);
    debug_assert!(is_avoiding(&set, m).unwrap_or(false));
    ConstructionOutput {
        m,
        method: Method::Product,
        set,
        guaranteed_size: guarantee,
    }
}

/// Largest of the applicable constructions for `m`; used to seed searches.
pub fn best_construction<F: Real>(f: &Factorization) -> Result<ConstructionOutput<F>> {
    let m = f.m();
    let mut best = product_set::<F>(f)?;
    let mut consider = |c: ConstructionOutput<F>| {
        if c.size() > best.size() {
            best = c;
        }
    };
    if m == 65 {
        consider(ruzsa65());
    }
    if let [(p, 2)] = f.factors() {
        consider(p_square_set(*p)?);
    }
    Ok(best)
}
