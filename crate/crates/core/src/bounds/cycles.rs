//! Eigenvalues forced by chordless cycles.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::linalg::{eigenvectors, q, RationalMatrix, Q};
use crate::spectral::NbLaplacian;

/// Largest `2M` for the chordless cycle search.
pub const CYCLE_CAP: usize = 64;

/// Vertex sets of all chordless cycles, each listed in cycle order starting
/// at its smallest vertex.
pub fn chordless_cycles(g: &SimpleGraph) -> Vec<Vec<usize>> {
    fn extend(g: &SimpleGraph, path: &mut Vec<usize>, seen: &mut BTreeSet<Vec<usize>>, out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w <= s || path.contains(&w) {
                continue;
            }
            // no chord from w into the interior of the path
            if path[1..path.len() - 1].iter().any(|&u| g.has_edge(u, w)) {
                continue;
            }
            path.push(w);
            if g.has_edge(w, s) {
                let mut key = path.clone();
                key.sort_unstable();
                if seen.insert(key) {
                    out.push(path.clone());
                }
            } else {
                extend(g, path, seen, out);
            }
            path.pop();
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in 0..g.n() {
        for &v in g.neighbors(s) {
            if v > s {
                let mut path = vec![s, v];
                extend(g, &mut path, &mut seen, &mut out);
            }
        }
    }
    out
}

/// `+1` on edges traversed upwards, `-1` downwards, in edge order.
fn signed_edge_vector(g: &SimpleGraph, cycle: &[usize]) -> Vec<i64> {
    let mut v = vec![0; g.m()];
    for (i, &a) in cycle.iter().enumerate() {
        let b = cycle[(i + 1) % cycle.len()];
        let e = g.edges().binary_search(&(a.min(b), a.max(b))).expect("cycle edge");
        v[e] = if a < b { 1 } else { -1 };
    }
    v
}

fn signed_rank(vectors: &[Vec<i64>]) -> usize {
    let cols = vectors[0].len();
    let flat: Vec<i64> = vectors.iter().flatten().copied().collect();
    RationalMatrix::from_i64(vectors.len(), cols, &flat).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignatureKind {
    /// Every vertex has degree `d`.
    Regular { d: usize },
    /// One vertex has degree `d > 2`, the others degree 2.
    OneLargeVertex { d: usize, length: usize },
}

impl SignatureKind {
    fn of(g: &SimpleGraph, cycle: &[usize]) -> Option<Self> {
        let degs: Vec<usize> = cycle.iter().map(|&v| g.degree(v)).collect();
        if degs.iter().all(|&d| d == degs[0]) {
            return Some(SignatureKind::Regular { d: degs[0] });
        }
        let big: Vec<usize> = degs.iter().copied().filter(|&d| d != 2).collect();
        (big.len() == 1 && big[0] > 2).then_some(SignatureKind::OneLargeVertex { d: big[0], length: cycle.len() })
    }

    /// Predicted eigenvalues `1 - r` and, for even cycles, `1 + r`.
    fn radius(&self) -> f64 {
        match *self {
            SignatureKind::Regular { d } => 1.0 / (d - 1) as f64,
            SignatureKind::OneLargeVertex { d, length } => ((d - 1) as f64).powf(-1.0 / length as f64),
        }
    }

    fn exact_radius(&self) -> Option<Q> {
        match *self {
            SignatureKind::Regular { d } => Some(q(1, d as i64 - 1)),
            SignatureKind::OneLargeVertex { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleSignature {
    pub vertices: Vec<usize>,
    pub kind: SignatureKind,
    pub predicted: Vec<f64>,
    pub holds: bool,
}

/// Geometric multiplicity of a predicted eigenvalue against the number of
/// cycles predicting it.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityCheck {
    pub value: f64,
    /// Rational value when decided exactly.
    pub exact: Option<String>,
    pub cycles: usize,
    /// Rank of the signed edge vectors of those cycles.
    pub independent_cycles: usize,
    pub geometric_multiplicity: usize,
    /// `geometric_multiplicity >= independent_cycles`
    pub holds: bool,
    /// `geometric_multiplicity >= cycles`; informational, fails on `K4`.
    pub covers_all_cycles: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleSignatureReport {
    pub signatures: Vec<CycleSignature>,
    pub multiplicities: Vec<MultiplicityCheck>,
}

impl CycleSignatureReport {
    pub fn holds(&self) -> bool {
        self.signatures.iter().all(|s| s.holds) && self.multiplicities.iter().all(|m| m.holds)
    }
}

pub fn cycle_signature_check(g: &SimpleGraph, tol: f64) -> Result<CycleSignatureReport> {
    let lap = NbLaplacian::new(g)?;
    cycle_signature_check_for(&lap, tol)
}

pub fn cycle_signature_check_for(lap: &NbLaplacian, tol: f64) -> Result<CycleSignatureReport> {
    let g = lap.graph();
    if 2 * g.m() > CYCLE_CAP {
        return Err(Error::Capability(format!("chordless cycle search capped at 2M <= {CYCLE_CAP}")));
    }
    let spec = lap.spectrum(tol)?;
    let cp = lap.char_poly();
    let dim = lap.dim();

    // (kind, sign) -> signed edge vectors of the qualifying cycles
    let mut tally: std::collections::BTreeMap<(SignatureKind, i8), Vec<Vec<i64>>> = Default::default();
    let mut signatures = Vec::new();
    for cycle in chordless_cycles(g) {
        let Some(kind) = SignatureKind::of(g, &cycle) else { continue };
        let even = cycle.len() % 2 == 0;
        let signs: &[i8] = if even { &[-1, 1] } else { &[-1] };
        let mut holds = true;
        let mut predicted = Vec::new();
        let vector = signed_edge_vector(g, &cycle);
        for &s in signs {
            tally.entry((kind, s)).or_default().push(vector.clone());
            let value = 1.0 + s as f64 * kind.radius();
            predicted.push(value);
            holds &= match kind.exact_radius() {
                Some(r) => cp.root_multiplicity(&(q(1, 1) + r * q(s as i64, 1))) > 0,
                None => spec.contains(Complex64::new(value, 0.0), tol),
            };
        }
        signatures.push(CycleSignature { vertices: cycle, kind, predicted, holds });
    }

    let mut multiplicities = Vec::new();
    for ((kind, s), vectors) in tally {
        let (cycles, independent) = (vectors.len(), signed_rank(&vectors));
        let value = 1.0 + s as f64 * kind.radius();
        let (exact, geometric) = match kind.exact_radius() {
            Some(r) => {
                let lambda = q(1, 1) + r * q(s as i64, 1);
                let rank = lap.l().shifted_neg(&lambda).rank();
                (Some(lambda.to_string()), dim - rank)
            }
            None => (None, eigenvectors(lap.l(), Complex64::new(value, 0.0)).len()),
        };
        multiplicities.push(MultiplicityCheck {
            value,
            exact,
            cycles,
            independent_cycles: independent,
            geometric_multiplicity: geometric,
            holds: geometric >= independent,
            covers_all_cycles: geometric >= cycles,
        });
    }
    Ok(CycleSignatureReport { signatures, multiplicities })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_graphs;
    use crate::graph::Family;
    use crate::DEFAULT_TOL;

    fn fam(s: &str) -> SimpleGraph {
        s.parse::<Family>().unwrap().build().unwrap()
    }

    /// Chordless cycles by brute force over vertex subsets: the induced
    /// subgraph must be connected and 2-regular.
    fn brute_chordless(g: &SimpleGraph) -> BTreeSet<Vec<usize>> {
        let n = g.n();
        (1u32..1 << n)
            .filter(|m| m.count_ones() >= 3)
            .filter_map(|mask| {
                let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                let index = |v: usize| vs.iter().position(|&u| u == v);
                let edges = g.edges().iter().filter_map(|&(a, b)| Some((index(a)?, index(b)?)));
                let h = SimpleGraph::new(vs.len(), edges).ok()?;
                (h.is_connected() && h.degrees().iter().all(|&d| d == 2)).then_some(vs)
            })
            .collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for g in enumerate_graphs(6, 1).unwrap() {
            let found: BTreeSet<Vec<usize>> = chordless_cycles(&g)
                .into_iter()
                .map(|mut c| {
                    c.sort_unstable();
                    c
                })
                .collect();
            assert_eq!(found, brute_chordless(&g), "{g:?}");
        }
    }

    #[test]
    fn complete_four() {
        let r = cycle_signature_check(&fam("complete:4"), DEFAULT_TOL).unwrap();
        assert_eq!(r.signatures.len(), 4);
        assert!(r.signatures.iter().all(|s| s.kind == SignatureKind::Regular { d: 3 }));
        let m = &r.multiplicities[0];
        assert_eq!(m.exact.as_deref(), Some("1/2"));
        // four triangles, three independent ones, and a 3-dimensional eigenspace
        assert_eq!((m.cycles, m.independent_cycles, m.geometric_multiplicity), (4, 3, 3));
        assert!(!m.covers_all_cycles);
        assert!(r.holds());
    }

    #[test]
    fn petal_irrational_value() {
        let r = cycle_signature_check(&fam("petal:2,3"), DEFAULT_TOL).unwrap();
        assert_eq!(r.signatures.len(), 2);
        let expected = 1.0 - 3f64.powf(-1.0 / 3.0);
        for s in &r.signatures {
            assert_eq!(s.kind, SignatureKind::OneLargeVertex { d: 4, length: 3 });
            assert!((s.predicted[0] - expected).abs() < 1e-15);
        }
        assert!(r.holds());
    }

    #[test]
    fn even_cycles_add_the_plus_value() {
        let r = cycle_signature_check(&fam("bipartite:3,3"), DEFAULT_TOL).unwrap();
        assert!(r.signatures.iter().all(|s| s.predicted == vec![0.5, 1.5]));
        assert!(r.holds());
    }

    #[test]
    fn holds_on_small_graphs() {
        for g in enumerate_graphs(6, 2).unwrap() {
            let r = cycle_signature_check(&g, DEFAULT_TOL).unwrap();
            assert!(r.holds(), "{g:?}: {r:?}");
        }
    }
}
