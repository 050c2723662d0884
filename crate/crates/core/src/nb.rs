//! Non-backtracking graphs.
//!
//! The NB graph of a simple graph `G` with edges `e_1..e_M` has the `2M`
//! oriented edges as vertices: `e_1..e_M` are the edges `(u, v)`, `u < v`, in
//! lexicographic order, and `e_{M+i}` is the reversal of `e_i`. There is an arc
//! `e_i -> e_j` iff `out(e_i) = inp(e_j)` and `inp(e_i) != out(e_j)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::iso::{are_isomorphic, find_isomorphism, Digraph};
use crate::linalg::{RationalMatrix, Q};

/// Largest NB vertex count accepted by the digraph isomorphism check.
pub const NB_ISO_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrientedEdge {
    pub inp: usize,
    pub out: usize,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct NbGraph {
    base: SimpleGraph,
    vertices: Vec<OrientedEdge>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

pub fn build_nb(g: &SimpleGraph) -> Result<NbGraph> {
    NbGraph::new(g)
}

impl NbGraph {
    pub fn new(g: &SimpleGraph) -> Result<Self> {
        let m = g.m();
        if m == 0 {
            return Err(Error::Precondition("NB graph of an edgeless graph".into()));
        }
        let mut vertices = Vec::with_capacity(2 * m);
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            vertices.push(OrientedEdge { inp: u, out: v, index: i });
        }
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            vertices.push(OrientedEdge { inp: v, out: u, index: m + i });
        }
        // oriented edges leaving each vertex
        let mut leaving: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for e in &vertices {
            leaving[e.inp].push(e.index);
        }
        let mut succ = vec![Vec::new(); 2 * m];
        let mut pred = vec![Vec::new(); 2 * m];
        for e in &vertices {
            for &j in &leaving[e.out] {
                if vertices[j].out != e.inp {
                    succ[e.index].push(j);
                    pred[j].push(e.index);
                }
            }
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
        }
        Ok(NbGraph { base: g.clone(), vertices, succ, pred })
    }

    pub fn base(&self) -> &SimpleGraph {
        &self.base
    }

    /// Number of NB vertices, `2M`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of base edges, `M`.
    pub fn m(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn vertices(&self) -> &[OrientedEdge] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> OrientedEdge {
        self.vertices[i]
    }

    /// Index of the reversal of oriented edge `i`.
    pub fn reverse(&self, i: usize) -> usize {
        let m = self.m();
        if i < m {
            i + m
        } else {
            i - m
        }
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.succ[i].len()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.succ.iter().map(Vec::len).collect()
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph::new(self.len(), self.arcs())
    }

    /// 0/1 successor matrix `B`.
    pub fn b_matrix(&self) -> RationalMatrix {
        let mut b = RationalMatrix::zeros(self.len(), self.len());
        for (i, j) in self.arcs() {
            b.set(i, j, Q::one());
        }
        b
    }

    /// Reversal pairing `P`: the block swap of `e` and `e^-1`.
    pub fn p_matrix(&self) -> RationalMatrix {
        let n = self.len();
        RationalMatrix::from_fn(n, n, |i, j| if self.reverse(i) == j { Q::one() } else { Q::zero() })
    }

    /// `D = diag(deg out(e_i) - 1)`.
    pub fn d_matrix(&self) -> RationalMatrix {
        let d: Vec<Q> = self.out_degrees().iter().map(|&k| Q::from_integer(k.into())).collect();
        RationalMatrix::diagonal(&d)
    }

    /// Weakly connected components, each sorted, ordered by smallest member.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in self.succ[v].iter().chain(&self.pred[v]) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Strongly connected components (Tarjan), each sorted, ordered by
    /// smallest member.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comps = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            // explicit DFS frames: (vertex, next successor position)
            let mut frames = vec![(root, 0usize)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
                if let Some(&w) = self.succ[v].get(*pos) {
                    *pos += 1;
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("component member");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
        comps.sort();
        comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strong_components().len() == 1
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.weak_components().len() == 1
    }

    /// Proper 2-coloring of the underlying undirected graph, if any.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        two_color(self.len(), |v| self.succ[v].iter().chain(&self.pred[v]).copied().collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<[usize; 2]> = self.vertices.iter().map(|e| [e.inp, e.out]).collect();
        let arcs: Vec<[usize; 2]> = self.arcs().into_iter().map(|(i, j)| [i, j]).collect();
        serde_json::json!({ "vertices": vertices, "arcs": arcs })
    }

    /// `B` as Matrix Market coordinate text.
    pub fn matrix_market(&self) -> String {
        let mut out = String::from("%%MatrixMarket matrix coordinate pattern general\n");
        writeln!(out, "{} {} {}", self.len(), self.len(), self.arc_count()).unwrap();
        for (i, j) in self.arcs() {
            writeln!(out, "{} {}", i + 1, j + 1).unwrap();
        }
        out
    }
}

fn two_color(n: usize, nbrs: impl Fn(usize) -> Vec<usize>) -> Option<Vec<u8>> {
    let mut color = vec![u8::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in nbrs(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectivityClass {
    CycleGraph,
    NbStronglyConnected,
}

/// The four equivalent conditions for a connected graph of min degree >= 2,
/// each computed independently.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityReport {
    pub class: ConnectivityClass,
    pub not_cycle: bool,
    pub at_least_two_cycles: bool,
    pub nb_weakly_connected: bool,
    pub nb_strongly_connected: bool,
    pub consistent: bool,
}

pub fn connectivity_class(g: &SimpleGraph) -> Result<ConnectivityReport> {
    if g.n() == 0 || g.min_degree() < 2 {
        return Err(Error::Precondition("connectivity class needs min degree >= 2".into()));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("connectivity class needs a connected graph".into()));
    }
    let nb = NbGraph::new(g)?;
    let not_cycle = !g.is_cycle_graph();
    // a connected graph has exactly one cycle iff its cyclomatic number is 1
    let at_least_two_cycles = g.m() + 1 >= g.n() + 2;
    let weak = nb.is_weakly_connected();
    let strong = nb.is_strongly_connected();
    Ok(ConnectivityReport {
        class: if not_cycle {
            ConnectivityClass::NbStronglyConnected
        } else {
            ConnectivityClass::CycleGraph
        },
        not_cycle,
        at_least_two_cycles,
        nb_weakly_connected: weak,
        nb_strongly_connected: strong,
        consistent: not_cycle == at_least_two_cycles && not_cycle == weak && not_cycle == strong,
    })
}

/// Base-graph statistics recovered from an NB digraph alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconstructionReport {
    pub edge_count: usize,
    /// degree `d_j` -> number `c_j` of base vertices with that degree
    pub degree_counts: BTreeMap<usize, usize>,
    pub vertex_count: usize,
}

/// Infers `M`, the degree histogram and `N` from the out-degree histogram:
/// `c_j * d_j` NB vertices have out-degree `d_j - 1`.
pub fn reconstruct_from_digraph(d: &Digraph) -> Result<ReconstructionReport> {
    if !d.n().is_multiple_of(2) {
        return Err(Error::Reconstruction(format!("odd NB vertex count {}", d.n())));
    }
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..d.n() {
        *hist.entry(d.out_neighbors(v).len() + 1).or_default() += 1;
    }
    let mut degree_counts = BTreeMap::new();
    for (&deg, &count) in &hist {
        if count % deg != 0 {
            return Err(Error::Reconstruction(format!(
                "{count} NB vertices of out-degree {} is not a multiple of {deg}",
                deg - 1
            )));
        }
        degree_counts.insert(deg, count / deg);
    }
    Ok(ReconstructionReport {
        edge_count: d.n() / 2,
        vertex_count: degree_counts.values().sum(),
        degree_counts,
    })
}

pub fn reconstruct_stats(nb: &NbGraph) -> Result<ReconstructionReport> {
    reconstruct_from_digraph(&nb.to_digraph())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsoTheoremReport {
    pub iso_graph: bool,
    pub iso_nb: bool,
    pub agree: bool,
}

/// Decides isomorphism of the graphs and of their NB digraphs independently.
pub fn nb_isomorphism_theorem_check(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<IsoTheoremReport> {
    for g in [g1, g2] {
        if g.n() == 0 || g.min_degree() < 1 {
            return Err(Error::Precondition("isomorphism check needs min degree >= 1".into()));
        }
        if 2 * g.m() > NB_ISO_CAP {
            return Err(Error::Capability(format!(
                "NB isomorphism search capped at {NB_ISO_CAP} NB vertices"
            )));
        }
    }
    let iso_graph = are_isomorphic(g1, g2)?;
    let d1 = NbGraph::new(g1)?.to_digraph();
    let d2 = NbGraph::new(g2)?.to_digraph();
    let iso_nb = find_isomorphism(&d1, &d2).is_some();
    Ok(IsoTheoremReport { iso_graph, iso_nb, agree: iso_graph == iso_nb })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteNbReport {
    pub nb_bipartite: bool,
    pub graph_bipartite: bool,
    /// A 2-coloring of the NB graph exists that separates every reversal pair.
    pub reversal_pairs_split: bool,
    pub consistent: bool,
}

pub fn bipartite_nb_partition_check(g: &SimpleGraph) -> Result<BipartiteNbReport> {
    if g.n() == 0 || g.min_degree() < 2 {
        return Err(Error::Precondition("bipartite NB check needs min degree >= 2".into()));
    }
    let nb = NbGraph::new(g)?;
    let nb_bipartite = nb.bipartition().is_some();
    let graph_bipartite = g.is_bipartite();
    let reversal_pairs_split = if nb_bipartite {
        two_color(nb.len(), |v| {
            let mut n: Vec<usize> = nb.successors(v).iter().chain(nb.predecessors(v)).copied().collect();
            n.push(nb.reverse(v));
            n
        })
        .is_some()
    } else {
        true
    };
    Ok(BipartiteNbReport {
        nb_bipartite,
        graph_bipartite,
        reversal_pairs_split,
        consistent: nb_bipartite == graph_bipartite && reversal_pairs_split,
    })
}
