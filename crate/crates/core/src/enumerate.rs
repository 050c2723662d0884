//! Canonical forms and exhaustive enumeration of small simple graphs.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::graph6;
use crate::iso::{refine_jointly, Digraph};

/// Largest vertex count the enumerator accepts.
pub const ENUMERATION_CAP: usize = 8;

/// Largest vertex count with a `u64` canonical code.
pub const CANONICAL_CAP: usize = 11;

/// Canonical adjacency bitstring: the lexicographically largest upper
/// triangle (graph6 column order, first bit most significant) over all
/// vertex orders that respect the stable refined coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u64,
}

impl CanonicalForm {
    pub fn to_graph(self) -> SimpleGraph {
        let bits = self.n * self.n.saturating_sub(1) / 2;
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.code >> (bits - 1 - k) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        SimpleGraph::new(self.n, edges).expect("canonical code is a valid graph")
    }

    pub fn graph6(self) -> String {
        graph6::encode(&self.to_graph())
    }
}

pub fn canonical_form(g: &SimpleGraph) -> Result<CanonicalForm> {
    let n = g.n();
    if n > CANONICAL_CAP {
        return Err(Error::Capability(format!(
            "canonical form capped at n <= {CANONICAL_CAP}"
        )));
    }
    if n <= 1 {
        return Ok(CanonicalForm { n, code: 0 });
    }
    let colors = refine_jointly(&[&Digraph::from_graph(g)]).remove(0);
    let mut slots = colors.clone();
    slots.sort_unstable();
    let adj = g.adjacency_bits();
    let mut search = CanonSearch {
        n,
        total_bits: n * (n - 1) / 2,
        adj,
        colors,
        slots,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    search.dfs(0, 0);
    Ok(CanonicalForm {
        n,
        code: search.best.expect("at least one leaf"),
    })
}

struct CanonSearch {
    n: usize,
    total_bits: usize,
    adj: Vec<u64>,
    colors: Vec<usize>,
    slots: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<u64>,
}

impl CanonSearch {
    fn dfs(&mut self, depth: usize, prefix: u64) {
        if depth == self.n {
            if self.best.is_none_or(|b| prefix > b) {
                self.best = Some(prefix);
            }
            return;
        }
        for v in 0..self.n {
            if self.used[v] || self.colors[v] != self.slots[depth] {
                continue;
            }
            let mut code = prefix;
            for &u in &self.perm {
                code = code << 1 | (self.adj[u] >> v & 1);
            }
            let len = depth * (depth + 1) / 2;
            if let Some(best) = self.best {
                let best_prefix = if len == 0 { 0 } else { best >> (self.total_bits - len) };
                if code < best_prefix {
                    continue;
                }
            }
            self.used[v] = true;
            self.perm.push(v);
            self.dfs(depth + 1, code);
            self.perm.pop();
            self.used[v] = false;
        }
    }
}

/// All isomorphism classes on exactly `n` vertices, sorted by canonical code.
fn classes_up_to(n_max: usize) -> Vec<Vec<CanonicalForm>> {
    let mut levels: Vec<Vec<CanonicalForm>> = vec![vec![CanonicalForm { n: 0, code: 0 }]];
    for n in 1..=n_max {
        let prev = &levels[n - 1];
        let found: BTreeSet<CanonicalForm> = prev
            .par_iter()
            .flat_map_iter(|cf| {
                let base = cf.to_graph();
                (0u64..1 << (n - 1)).map(move |nbrs| {
                    let edges = base
                        .edges()
                        .iter()
                        .copied()
                        .chain((0..n - 1).filter(|&u| nbrs >> u & 1 == 1).map(|u| (u, n - 1)));
                    let g = SimpleGraph::new(n, edges).expect("extension is valid");
                    canonical_form(&g).expect("within canonical cap")
                })
            })
            .collect();
        levels.push(found.into_iter().collect());
    }
    levels
}

/// One representative per isomorphism class with `1 <= n <= n_max` vertices
/// and minimum degree `>= min_degree`, in (n, canonical code) order.
pub fn enumerate_graphs(n_max: usize, min_degree: usize) -> Result<Vec<SimpleGraph>> {
    if n_max > ENUMERATION_CAP {
        return Err(Error::Capability(format!(
            "enumeration capped at n <= {ENUMERATION_CAP}"
        )));
    }
    let levels = classes_up_to(n_max);
    Ok(levels
        .into_iter()
        .skip(1)
        .flatten()
        .map(CanonicalForm::to_graph)
        .filter(|g| g.min_degree() >= min_degree)
        .collect())
}

/// Classes on exactly `n` vertices with minimum degree `>= min_degree`.
pub fn enumerate_exact(n: usize, min_degree: usize) -> Result<Vec<SimpleGraph>> {
    Ok(enumerate_graphs(n, min_degree)?
        .into_iter()
        .filter(|g| g.n() == n)
        .collect())
}
