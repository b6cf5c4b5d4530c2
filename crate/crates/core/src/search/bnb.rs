//! Bit-parallel branch and bound for a maximum clique, with greedy
//! sequential colouring as the bound.

use std::time::{Duration, Instant};

use crate::bitset::BitSet;

pub(super) struct CliqueSearch<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    best_len: usize,
    current: Vec<usize>,
    nodes: u64,
    node_limit: u64,
    deadline: Option<Instant>,
    stopped: bool,
    /// Colour of the root-level vertex being expanded: no clique left to
    /// examine at the root is larger than this.
    root_bound: usize,
    scratch: Vec<Scratch>,
    pool: Vec<BitSet>,
}

#[derive(Default)]
struct Scratch {
    uncoloured: Option<BitSet>,
    class: Option<BitSet>,
    order: Vec<(usize, usize)>,
}

pub(super) struct Outcome {
    /// Vertex indices of the best clique found beyond the threshold, if any.
    pub clique: Option<Vec<usize>>,
    /// Proven bound on the clique number of the candidate graph.
    pub upper_bound: usize,
    pub complete: bool,
    pub nodes: u64,
}

impl<'a> CliqueSearch<'a> {
    pub fn new(adj: &'a [BitSet], node_limit: u64, time_limit: Option<Duration>) -> Self {
        Self {
            adj,
            best: Vec::new(),
            best_len: 0,
            current: Vec::new(),
            nodes: 0,
            node_limit,
            deadline: time_limit.map(|t| Instant::now() + t),
            stopped: false,
            root_bound: 0,
            scratch: Vec::new(),
            pool: Vec::new(),
        }
    }

    /// Looks for a clique strictly larger than `threshold` vertices.
    pub fn run(mut self, threshold: usize) -> Outcome {
        let n = self.adj.len();
        self.best_len = threshold;
        let all = BitSet::full(n);
        self.root_bound = n;
        self.expand(all, 0);
        let upper_bound = if self.stopped {
            self.root_bound.max(self.best_len)
        } else {
            self.best_len
        };
        Outcome {
            clique: (!self.best.is_empty()).then_some(self.best),
            upper_bound,
            complete: !self.stopped,
            nodes: self.nodes,
        }
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.node_limit {
            return true;
        }
        if let Some(deadline) = self.deadline {
            if self.nodes % 1024 == 0 && Instant::now() >= deadline {
                return true;
            }
        }
        false
    }

    /// Greedy colouring of `cand` in increasing index order. Returns
    /// `(vertex, colour)` grouped by colour, highest colour first, vertices of
    /// one colour in increasing order.
    fn colour(&mut self, depth: usize, cand: &BitSet) -> Vec<(usize, usize)> {
        let n = cand.len();
        let s = &mut self.scratch[depth];
        let uncoloured = s.uncoloured.get_or_insert_with(|| BitSet::new(n));
        uncoloured.words_mut().copy_from_slice(cand.words());
        let class = s.class.get_or_insert_with(|| BitSet::new(n));
        let mut order = std::mem::take(&mut s.order);
        order.clear();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            class.words_mut().copy_from_slice(uncoloured.words());
            while let Some(v) = class.first() {
                uncoloured.remove(v);
                class.remove(v);
                for (c, a) in class.words_mut().iter_mut().zip(self.adj[v].words()) {
                    *c &= !a;
                }
                order.push((v, colour));
            }
        }
        // stable: keeps increasing vertex order inside each colour
        order.sort_by(|a, b| b.1.cmp(&a.1));
        order
    }

    fn expand(&mut self, mut cand: BitSet, depth: usize) {
        self.nodes += 1;
        if self.out_of_budget() {
            self.stopped = true;
            self.pool.push(cand);
            return;
        }
        if self.scratch.len() <= depth {
            self.scratch.push(Scratch::default());
        }
        let order = self.colour(depth, &cand);
        if depth == 0 {
            self.root_bound = order.first().map_or(0, |&(_, c)| c);
        }
        for &(v, colour) in &order {
            if self.current.len() + colour <= self.best_len {
                break;
            }
            if depth == 0 {
                self.root_bound = colour;
            }
            let mut next = self.pool.pop().unwrap_or_else(|| BitSet::new(cand.len()));
            let size = cand.intersection_into(&self.adj[v], &mut next);
            self.current.push(v);
            if size == 0 {
                if self.current.len() > self.best_len {
                    self.best_len = self.current.len();
                    self.best = self.current.clone();
                }
                self.pool.push(next);
            } else {
                self.expand(next, depth + 1);
            }
            self.current.pop();
            if self.stopped {
                break;
            }
            cand.remove(v);
        }
        self.scratch[depth].order = order;
        self.pool.push(cand);
    }
}

/// Number of colours used by greedy sequential colouring in index order;
/// an upper bound on the clique number.
pub(super) fn greedy_colour_count(adj: &[BitSet]) -> usize {
    let n = adj.len();
    let mut uncoloured = BitSet::full(n);
    let mut class = BitSet::new(n);
    let mut colours = 0;
    while !uncoloured.is_empty() {
        colours += 1;
        class.words_mut().copy_from_slice(uncoloured.words());
        while let Some(v) = class.first() {
            uncoloured.remove(v);
            class.remove(v);
            for (c, a) in class.words_mut().iter_mut().zip(adj[v].words()) {
                *c &= !a;
            }
        }
    }
    colours
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<BitSet> {
        let mut adj = vec![BitSet::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    #[test]
    fn finds_triangle_in_house() {
        // square 0-1-2-3 with roof 4 on 2, 3
        let adj = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]);
        let out = CliqueSearch::new(&adj, u64::MAX, None).run(0);
        let mut c = out.clique.unwrap();
        c.sort();
        assert_eq!(c, vec![2, 3, 4]);
        assert!(out.complete);
        assert_eq!(out.upper_bound, 3);
    }

    #[test]
    fn threshold_and_budget() {
        let adj = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 2), (0, 3), (1, 3)]);
        let out = CliqueSearch::new(&adj, u64::MAX, None).run(4);
        assert!(out.clique.is_none());
        assert_eq!(out.upper_bound, 4);
        let starved = CliqueSearch::new(&adj, 1, None).run(0);
        assert!(!starved.complete);
        assert!(starved.upper_bound >= 4);
        assert_eq!(greedy_colour_count(&adj), 4);
        assert_eq!(greedy_colour_count(&[]), 0);
    }
}
