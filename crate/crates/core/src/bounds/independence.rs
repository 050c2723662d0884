//! Out-independence numbers of the NB graph.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nb::NbGraph;

/// Largest NB vertex count for the exact search (one `u64` bitset).
pub const INDEPENDENCE_CAP: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub alpha_out: usize,
    pub alpha_s_out: usize,
    pub out_set: Vec<usize>,
    pub strong_set: Vec<usize>,
}

/// Conflict masks: distinct NB vertices sharing an input, plus NB arcs in
/// either direction when `strong`.
pub fn conflicts(nb: &NbGraph, strong: bool) -> Vec<u64> {
    let n = nb.len();
    (0..n)
        .map(|i| {
            let vi = nb.vertex(i);
            (0..n)
                .filter(|&j| j != i)
                .filter(|&j| nb.vertex(j).inp == vi.inp || (strong && (nb.has_arc(i, j) || nb.has_arc(j, i))))
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect()
}

/// Maximum independent set of the conflict graph, as a maximum clique of
/// its complement with a greedy colouring bound.
pub fn maximum_independent_set(conflict: &[u64]) -> Vec<usize> {
    let n = conflict.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let compat: Vec<u64> = (0..n).map(|i| !conflict[i] & all & !(1 << i)).collect();

    struct Search<'a> {
        compat: &'a [u64],
        best: Vec<usize>,
        current: Vec<usize>,
    }

    impl Search<'_> {
        /// Vertices of `p` in colour order with their colour numbers.
        fn colour(&self, mut p: u64) -> Vec<(usize, usize)> {
            let mut out = Vec::with_capacity(p.count_ones() as usize);
            let mut colour = 0;
            while p != 0 {
                colour += 1;
                let mut q = p;
                while q != 0 {
                    let v = q.trailing_zeros() as usize;
                    q &= !(1 << v);
                    q &= !self.compat[v];
                    p &= !(1 << v);
                    out.push((v, colour));
                }
            }
            out
        }

        fn expand(&mut self, mut p: u64) {
            let order = self.colour(p);
            for &(v, c) in order.iter().rev() {
                if self.current.len() + c <= self.best.len() {
                    return;
                }
                self.current.push(v);
                let next = p & self.compat[v];
                if next == 0 {
                    if self.current.len() > self.best.len() {
                        self.best = self.current.clone();
                    }
                } else {
                    self.expand(next);
                }
                self.current.pop();
                p &= !(1 << v);
            }
        }
    }

    let mut s = Search { compat: &compat, best: Vec::new(), current: Vec::new() };
    if n > 0 {
        s.expand(all);
    }
    s.best.sort_unstable();
    s.best
}

pub fn independence_numbers(nb: &NbGraph) -> Result<IndependenceReport> {
    if nb.len() > INDEPENDENCE_CAP {
        return Err(Error::Capability(format!("independence numbers capped at 2M <= {INDEPENDENCE_CAP}")));
    }
    let out_set = maximum_independent_set(&conflicts(nb, false));
    let strong_set = maximum_independent_set(&conflicts(nb, true));
    Ok(IndependenceReport { alpha_out: out_set.len(), alpha_s_out: strong_set.len(), out_set, strong_set })
}
