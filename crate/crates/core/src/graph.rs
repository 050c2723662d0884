//! Simple undirected graphs, generators and elementary structure queries.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected graph without loops or multi-edges on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. The
/// value is immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

/// Degree statistics of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub min: usize,
    pub max: usize,
    pub edges: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl SimpleGraph {
    /// Builds a graph, normalizing each pair to `(min, max)` and removing
    /// duplicate pairs. Loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Argument(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Argument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SimpleGraph { n, edges, adj })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from the upper-triangle bitmask used by the enumerator:
    /// bit `i + j(j-1)/2` set means edge `(i, j)` for `i < j`.
    pub fn from_upper_mask(n: usize, mask: u64) -> Self {
        let mut edges = Vec::new();
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> bit & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        SimpleGraph::new(n, edges).expect("mask edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile {
            degrees: self.degrees(),
            min: self.min_degree(),
            max: self.max_degree(),
            edges: self.m(),
        }
    }

    /// Degree sequence sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Adjacency rows as bitmasks; requires `n <= 64`.
    pub fn adjacency_bits(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bit adjacency needs n <= 64");
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |acc, &w| acc | 1 << w))
            .collect()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when the graph is a single cycle `C_n`.
    pub fn is_cycle_graph(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.adj.iter().all(|l| l.len() == 2)
    }

    /// True when some connected component is a cycle graph.
    pub fn has_cycle_component(&self) -> bool {
        self.components()
            .iter()
            .any(|c| c.len() >= 3 && c.iter().all(|&v| self.degree(v) == 2))
    }

    /// Two-coloring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
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

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Applies a vertex relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Argument("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Argument("not a permutation".into()));
            }
        }
        SimpleGraph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    pub fn disjoint_union(&self, other: &SimpleGraph) -> Self {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        SimpleGraph::new(self.n + other.n, edges).expect("union of valid graphs")
    }

    /// The line graph: one vertex per edge (in edge order), adjacent when the
    /// edges share an endpoint.
    pub fn line_graph(&self) -> Result<Self> {
        if self.m() == 0 {
            return Err(Error::Argument("line graph of an edgeless graph".into()));
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut pairs = Vec::new();
        for list in &incident {
            for (a, &i) in list.iter().enumerate() {
                for &j in &list[a + 1..] {
                    pairs.push((i, j));
                }
            }
        }
        SimpleGraph::new(self.m(), pairs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        })
        .expect("graph serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let parsed: GraphJson = serde_json::from_value(value.clone())?;
        SimpleGraph::new(parsed.n, parsed.edges.into_iter().map(|[u, v]| (u, v)))
    }

    /// Parses whitespace-separated `u v` pairs, one per line, 0-indexed.
    ///
    /// Blank lines and `#` comments are skipped. An optional header line
    /// `n <count>` fixes the vertex count; otherwise it is `1 + max index`.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n_header: Option<usize> = None;
        let mut edges = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let line_start = offset;
            offset += line.len();
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.len() == 2 && tokens[0] == "n" {
                let count = parse_index(tokens[1], line_start)?;
                n_header = Some(count);
                continue;
            }
            if tokens.len() != 2 {
                return Err(Error::parse(line_start, format!("expected `u v`, got {body:?}")));
            }
            let u = parse_index(tokens[0], line_start)?;
            let v = parse_index(tokens[1], line_start)?;
            if u == v {
                return Err(Error::parse(line_start, format!("loop `{u} {v}`")));
            }
            edges.push((u, v));
        }
        let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = match n_header {
            Some(h) if h < inferred => {
                return Err(Error::Argument(format!(
                    "header n = {h} but edges reference vertex {}",
                    inferred - 1
                )))
            }
            Some(h) => h,
            None => inferred,
        };
        SimpleGraph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn parse_index(tok: &str, offset: usize) -> Result<usize> {
    if tok.starts_with('-') {
        return Err(Error::parse(offset, format!("negative index {tok}")));
    }
    tok.parse()
        .map_err(|_| Error::parse(offset, format!("bad index {tok:?}")))
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Complete(usize),
    /// `p` cycles of length `k` sharing one central vertex.
    Petal(usize, usize),
    Wheel(usize),
    /// Path with the given number of edges.
    Path(usize),
    CompleteBipartite(usize, usize),
}

impl Family {
    pub fn build(self) -> Result<SimpleGraph> {
        match self {
            Family::Cycle(n) => {
                require(n >= 3, "cycle needs N >= 3")?;
                SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Complete(n) => {
                require(n >= 2, "complete graph needs N >= 2")?;
                SimpleGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            }
            Family::Petal(p, k) => {
                require(p >= 1 && k >= 3, "petal graph needs p >= 1, k >= 3")?;
                let mut edges = Vec::with_capacity(p * k);
                for petal in 0..p {
                    let first = 1 + petal * (k - 1);
                    let ring: Vec<usize> = std::iter::once(0).chain(first..first + k - 1).collect();
                    for i in 0..k {
                        edges.push((ring[i], ring[(i + 1) % k]));
                    }
                }
                SimpleGraph::new(p * (k - 1) + 1, edges)
            }
            Family::Wheel(n) => {
                require(n >= 4, "wheel needs N >= 4")?;
                let rim = n - 1;
                let spokes = (1..n).map(|v| (0, v));
                let ring = (0..rim).map(|i| (1 + i, 1 + (i + 1) % rim));
                SimpleGraph::new(n, spokes.chain(ring))
            }
            Family::Path(m) => {
                require(m >= 1, "path needs M >= 1")?;
                SimpleGraph::new(m + 1, (0..m).map(|i| (i, i + 1)))
            }
            Family::CompleteBipartite(a, b) => {
                require(a >= 1 && b >= 1, "complete bipartite needs a, b >= 1")?;
                SimpleGraph::new(a + b, (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))))
            }
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Argument(msg.into()))
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `family:params`, e.g. `petal:2,3`, `cycle:5`, `complete:4`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<usize> = params
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Argument(format!("bad parameter {t:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        let one = |nums: &[usize]| -> Result<usize> {
            match nums {
                [a] => Ok(*a),
                _ => Err(Error::Argument(format!("{name} takes one parameter"))),
            }
        };
        let two = |nums: &[usize]| -> Result<(usize, usize)> {
            match nums {
                [a, b] => Ok((*a, *b)),
                _ => Err(Error::Argument(format!("{name} takes two parameters"))),
            }
        };
        match name {
            "cycle" => Ok(Family::Cycle(one(&nums)?)),
            "complete" => Ok(Family::Complete(one(&nums)?)),
            "wheel" => Ok(Family::Wheel(one(&nums)?)),
            "path" => Ok(Family::Path(one(&nums)?)),
            "petal" => two(&nums).map(|(p, k)| Family::Petal(p, k)),
            "bipartite" => two(&nums).map(|(a, b)| Family::CompleteBipartite(a, b)),
            _ => Err(Error::Argument(format!("unknown family {name:?}"))),
        }
    }
}
