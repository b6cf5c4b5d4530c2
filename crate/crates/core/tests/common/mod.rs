//! Helpers shared by the integration tests. Nothing here calls into the
//! search code: these are the independent oracles.
#![allow(dead_code)]

/// Squares mod `m` by direct squaring.
pub fn squares(m: u64) -> Vec<bool> {
    let mut sq = vec![false; m as usize];
    for a in 0..m {
        sq[(a * a % m) as usize] = true;
    }
    sq
}

/// Whether every nonzero difference of `set` avoids the squares.
pub fn avoids(set: &[u64], m: u64, sq: &[bool]) -> bool {
    set.iter().all(|&a| {
        set.iter()
            .all(|&b| a == b || !sq[((a + m - b) % m) as usize])
    })
}

/// Largest avoiding subset of `Z_m` for `m <= 256`, by a plain Tomita-style
/// maximum clique search on 256-bit masks over the graph joining residues
/// whose difference is a non-square both ways. Rooted at 0.
pub fn naive_max_avoiding(m: u64) -> usize {
    assert!((1..=256).contains(&m));
    let sq = squares(m);
    let n = m as usize;
    let mut adj = vec![[0u128; 2]; n];
    for a in 0..n {
        for b in 0..n {
            let d = (a + n - b) % n;
            if a != b && !sq[d] && !sq[(n - d) % n] {
                adj[a][b / 128] |= 1 << (b % 128);
            }
        }
    }
    let mut best = 1;
    expand(1, adj[0], &adj, &mut best);
    best
}

fn has(s: &[u128; 2], v: usize) -> bool {
    s[v / 128] >> (v % 128) & 1 == 1
}

fn expand(r: usize, p: [u128; 2], adj: &[[u128; 2]], best: &mut usize) {
    // greedy colour classes, vertices listed with the class number they got
    let mut order = Vec::new();
    let mut left = p;
    let mut colour = 0;
    while left != [0, 0] {
        colour += 1;
        let mut avail = left;
        while let Some(v) = (0..adj.len()).find(|&v| has(&avail, v)) {
            order.push((v, colour));
            left[v / 128] &= !(1 << (v % 128));
            avail[0] &= !adj[v][0];
            avail[1] &= !adj[v][1];
            avail[v / 128] &= !(1 << (v % 128));
        }
    }
    let mut p = p;
    for &(v, c) in order.iter().rev() {
        if r + c <= *best {
            return;
        }
        let next = [p[0] & adj[v][0], p[1] & adj[v][1]];
        if next == [0, 0] {
            *best = (*best).max(r + 1);
        } else {
            expand(r + 1, next, adj, best);
        }
        p[v / 128] &= !(1 << (v % 128));
    }
}

/// Trial-division primality.
pub fn slow_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Legendre symbol by Euler's criterion with plain modular exponentiation.
pub fn euler_legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let (mut base, mut e, mut acc) = (a as u128, (p - 1) / 2, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Avoidance check for squarefree `m = prod primes`: a difference is a square
/// mod `m` iff it is a square (or zero) mod every prime factor.
pub fn avoids_squarefree(set: &[u64], primes: &[u64]) -> bool {
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[..i] {
            if primes.iter().all(|&p| euler_legendre((a + p - b % p) % p, p) >= 0) {
                return false;
            }
        }
    }
    true
}

/// Odd squarefree moduli up to `10^9` in a fixed pseudo-uniform order.
pub fn weyl_odd_squarefree(count: usize) -> Vec<u64> {
    (0u64..)
        .map(|k| (k * 618_033_988 + 12_345) % 1_000_000_000)
        .filter(|&m| m >= 3 && m % 2 == 1 && squarefree_by_trial(m))
        .take(count)
        .collect()
}

fn squarefree_by_trial(mut m: u64) -> bool {
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}
