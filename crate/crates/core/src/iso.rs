//! Isomorphism search for small graphs and digraphs.
//!
//! Both levels (simple graphs and NB digraphs) share one backtracking search
//! over vertex bijections. Candidate sets are pruned by a joint color
//! refinement of the two inputs and by arc consistency with the partial map.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Largest simple graph accepted by [`are_isomorphic`].
pub const GRAPH_ISO_CAP: usize = 10;

/// Dense directed graph without loops. Undirected graphs are represented with
/// both arc directions present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    adj: Vec<bool>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![false; n * n];
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (u, v) in arcs {
            assert!(u < n && v < n, "arc out of range");
            if !std::mem::replace(&mut adj[u * n + v], true) {
                out[u].push(v);
                inc[v].push(u);
            }
        }
        Digraph { n, adj, out, inc }
    }

    pub fn from_graph(g: &SimpleGraph) -> Self {
        Digraph::new(
            g.n(),
            g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }
}

/// Stable color refinement over a list of digraphs considered jointly, so that
/// color ids are comparable across them. Returns one color vector per input.
pub(crate) fn refine_jointly(graphs: &[&Digraph]) -> Vec<Vec<usize>> {
    let mut colors: Vec<Vec<usize>> = graphs
        .iter()
        .map(|g| (0..g.n).map(|v| g.out[v].len() * (g.n + 1) + g.inc[v].len()).collect())
        .collect();
    let mut classes = usize::MAX;
    loop {
        let mut sigs: Vec<Vec<(usize, Vec<usize>, Vec<usize>)>> = Vec::new();
        let mut all = BTreeMap::new();
        for (g, col) in graphs.iter().zip(&colors) {
            let s: Vec<_> = (0..g.n)
                .map(|v| {
                    let mut o: Vec<usize> = g.out[v].iter().map(|&w| col[w]).collect();
                    let mut i: Vec<usize> = g.inc[v].iter().map(|&w| col[w]).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    (col[v], o, i)
                })
                .collect();
            for sig in &s {
                all.insert(sig.clone(), 0usize);
            }
            sigs.push(s);
        }
        for (id, slot) in all.values_mut().enumerate() {
            *slot = id;
        }
        let count = all.len();
        colors = sigs
            .iter()
            .map(|s| s.iter().map(|sig| all[sig]).collect())
            .collect();
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

/// Finds an isomorphism `a -> b` (as `map[v_a] = v_b`) if one exists.
pub fn find_isomorphism(a: &Digraph, b: &Digraph) -> Option<Vec<usize>> {
    if a.n != b.n || a.arc_count() != b.arc_count() {
        return None;
    }
    let n = a.n;
    if n == 0 {
        return Some(Vec::new());
    }
    let colors = refine_jointly(&[a, b]);
    let (ca, cb) = (&colors[0], &colors[1]);
    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }
    let class_size = |c: usize| ca.iter().filter(|&&x| x == c).count();

    // Search order: grow from the smallest class, preferring vertices with the
    // most links into the already ordered prefix.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size(ca[v]), v))
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
        for &w in a.out[next].iter().chain(&a.inc[next]) {
            links[w] += 1;
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, ca, cb, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Digraph,
    b: &Digraph,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..b.n {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&xp| {
            let yp = map[xp];
            a.has_arc(x, xp) == b.has_arc(y, yp) && a.has_arc(xp, x) == b.has_arc(yp, y)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

/// True iff an edge-preserving bijection exists. Capped at `n <= 10`.
pub fn are_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<bool> {
    if g1.n().max(g2.n()) > GRAPH_ISO_CAP {
        return Err(Error::Capability(format!(
            "graph isomorphism search capped at n <= {GRAPH_ISO_CAP}"
        )));
    }
    if g1.n() != g2.n() || g1.m() != g2.m() || g1.degree_sequence() != g2.degree_sequence() {
        return Ok(false);
    }
    Ok(find_isomorphism(&Digraph::from_graph(g1), &Digraph::from_graph(g2)).is_some())
}
