//! Sound reductions applied before branching.
//!
//! * Multipliers. For a unit square `u` the map `x -> u x` sends squares to
//!   squares and nonsquares to nonsquares; `x -> -x` preserves the symmetric
//!   connection set. Both fix 0, so a clique through 0 and some `v` maps to
//!   one through 0 and any chosen point of the orbit of `v`.
//! * False twins. Two non-adjacent candidates with the same neighbourhood
//!   inside the candidate set are interchangeable in any clique.

use std::collections::HashMap;

use num_integer::Integer;

use crate::bitset::BitSet;

/// Orbits of `points` (sorted, nonzero residues mod `m`, closed under the
/// multiplier group) under `x -> +-u x` for unit squares `u`. Each orbit is a
/// list of indices into `points`, orbits ordered by their least element.
pub(super) fn multiplier_orbits(m: u64, points: &[u64]) -> Vec<Vec<usize>> {
    let mut multipliers: Vec<u64> = (1..m)
        .filter(|x| x.gcd(&m) == 1)
        .map(|x| x * x % m)
        .collect();
    multipliers.sort_unstable();
    multipliers.dedup();
    let negated: Vec<u64> = multipliers.iter().map(|&u| m - u).collect();
    multipliers.extend(negated);

    let mut index = vec![usize::MAX; m as usize];
    for (i, &p) in points.iter().enumerate() {
        index[p as usize] = i;
    }
    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut orbits = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        for &u in &multipliers {
            let img = (u as u128 * p as u128 % m as u128) as usize;
            let j = index[img];
            assert!(j != usize::MAX, "point set not closed under multipliers");
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = id;
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Indices of `adj` that survive false-twin removal: of each class of
/// vertices with equal rows the smallest index is kept.
pub(super) fn twin_free(adj: &[BitSet]) -> Vec<usize> {
    let mut seen: HashMap<&[u64], usize> = HashMap::with_capacity(adj.len());
    (0..adj.len())
        .filter(|&v| {
            let row = adj[v].words();
            if seen.contains_key(row) {
                false
            } else {
                seen.insert(row, v);
                true
            }
        })
        .collect()
}

/// Dense adjacency among `verts` (residues) under the circulant graph with
/// connection set `conn`.
pub(super) fn induced(m: u64, conn: &BitSet, verts: &[u64]) -> Vec<BitSet> {
    let n = verts.len();
    let mut adj = vec![BitSet::new(n); n];
    for i in 0..n {
        for j in i + 1..n {
            let d = (verts[j] + m - verts[i]) % m;
            if conn.contains(d as usize) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}
