//! Cospectrality scans over the exhaustive enumeration.
//!
//! Every graph gets an exact key per operator: the primitive integer form of
//! the characteristic polynomial. Graphs of the same order sharing a key form
//! a cospectral class; since the enumeration holds one graph per isomorphism
//! class, every class of size two or more is a set of genuine mates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::enumerate_exact;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::linalg::{char_poly, RationalMatrix, Q};
use crate::nb::NbGraph;
use crate::spectral::{random_walk_laplacian, NbLaplacian};

/// Largest order for a scan; order 8 additionally needs an explicit opt-in.
pub const SCAN_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    Adjacency,
    /// `Id - D^-1 A` of the graph itself.
    NormalizedLaplacian,
    /// `B^T`.
    NbMatrix,
    NbLaplacian,
}

impl Operator {
    pub const ALL: [Operator; 4] =
        [Operator::Adjacency, Operator::NormalizedLaplacian, Operator::NbMatrix, Operator::NbLaplacian];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Adjacency => "adjacency",
            Operator::NormalizedLaplacian => "normalized_laplacian",
            Operator::NbMatrix => "nb_matrix",
            Operator::NbLaplacian => "nb_laplacian",
        }
    }

    pub fn matrix(self, g: &SimpleGraph) -> Result<RationalMatrix> {
        match self {
            Operator::Adjacency => {
                let n = g.n();
                Ok(RationalMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { Q::from_integer(1.into()) } else { Q::zero() }))
            }
            Operator::NormalizedLaplacian => random_walk_laplacian(g),
            Operator::NbMatrix => Ok(NbGraph::new(g)?.b_matrix().transpose()),
            Operator::NbLaplacian => Ok(NbLaplacian::new(g)?.l().clone()),
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Operator::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown operator '{s}' (expected adjacency, normalized_laplacian, nb_matrix or nb_laplacian)")))
    }
}

/// Exact spectral fingerprint under one operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectralKey {
    pub operator: Operator,
    /// Primitive integer coefficients, ascending, positive leading term.
    pub coeffs: Vec<BigInt>,
    /// `char_poly = clearing * primitive`.
    pub clearing: Q,
}

impl SpectralKey {
    pub fn new(g: &SimpleGraph, operator: Operator) -> Result<Self> {
        let (coeffs, clearing) = char_poly(&operator.matrix(g)?).integer_form();
        Ok(SpectralKey { operator, coeffs, clearing })
    }

    /// Keys are equal iff the spectra are equal.
    pub fn cospectral(&self, other: &SpectralKey) -> bool {
        self.operator == other.operator && self.coeffs == other.coeffs
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    /// `"<=6"` for the aggregated small orders, otherwise the order.
    pub label: String,
    pub orders: Vec<usize>,
    pub graphs: usize,
    /// Graphs in a class of size at least two, per operator in
    /// [`Operator::ALL`] order.
    pub counts: [usize; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct CospectralClass {
    pub n: usize,
    pub operator: Operator,
    pub graph6: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub rows: Vec<ScanRow>,
    pub classes: Vec<CospectralClass>,
}

impl ScanResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,#graphs,A,L,𝒜,ℒ\n");
        for r in &self.rows {
            let c = r.counts;
            out.push_str(&format!("{},{},{},{},{},{}\n", r.label, r.graphs, c[0], c[1], c[2], c[3]));
        }
        out
    }

    /// Non-isomorphic pairs of order `n` sharing a key under `operator`.
    pub fn witnesses(&self, n: usize, operator: Operator) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        for c in self.classes.iter().filter(|c| c.n == n && c.operator == operator) {
            for i in 0..c.graph6.len() {
                for j in i + 1..c.graph6.len() {
                    pairs.push((c.graph6[i].clone(), c.graph6[j].clone()));
                }
            }
        }
        pairs
    }
}

/// Cospectral classes among `graphs` (all of one order) for each operator,
/// members in input order, classes ordered by first member.
pub fn cospectral_classes(graphs: &[SimpleGraph], on_done: &(dyn Fn(usize) + Sync)) -> Result<Vec<(Operator, Vec<usize>)>> {
    let keys: Vec<[SpectralKey; 4]> = graphs
        .par_iter()
        .map(|g| {
            let keys = Operator::ALL.map(|op| SpectralKey::new(g, op));
            on_done(1);
            let [a, b, c, d] = keys;
            Ok([a?, b?, c?, d?])
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (slot, op) in Operator::ALL.into_iter().enumerate() {
        let mut groups: HashMap<&Vec<BigInt>, Vec<usize>> = HashMap::new();
        for (i, k) in keys.iter().enumerate() {
            groups.entry(&k[slot].coeffs).or_default().push(i);
        }
        let mut classes: Vec<Vec<usize>> = groups.into_values().filter(|v| v.len() > 1).collect();
        classes.sort();
        out.extend(classes.into_iter().map(|c| (op, c)));
    }
    Ok(out)
}

pub fn cospectral_scan(n_max: usize, allow_n8: bool) -> Result<ScanResult> {
    cospectral_scan_with(n_max, allow_n8, &|_, _| {})
}

/// As [`cospectral_scan`], reporting `(order, graphs done)` as keys finish.
pub fn cospectral_scan_with(n_max: usize, allow_n8: bool, progress: &(dyn Fn(usize, usize) + Sync)) -> Result<ScanResult> {
    if n_max > SCAN_CAP {
        return Err(Error::Capability(format!("cospectral scans are capped at n <= {SCAN_CAP}")));
    }
    if n_max >= 8 && !allow_n8 {
        return Err(Error::Capability("the n = 8 scan is long-running and needs --allow-n8".into()));
    }
    let mut rows: Vec<ScanRow> = Vec::new();
    let mut classes = Vec::new();
    for n in 4..=n_max {
        let graphs = enumerate_exact(n, 2)?;
        let done = std::sync::atomic::AtomicUsize::new(0);
        let tick = |k: usize| {
            let d = done.fetch_add(k, std::sync::atomic::Ordering::Relaxed) + k;
            progress(n, d);
        };
        let found = cospectral_classes(&graphs, &tick)?;
        let mut counts = [0; 4];
        for (op, members) in found {
            let slot = Operator::ALL.iter().position(|&o| o == op).expect("known operator");
            counts[slot] += members.len();
            let graph6 = members.iter().map(|&i| crate::graph6::encode(&graphs[i])).collect();
            classes.push(CospectralClass { n, operator: op, graph6 });
        }
        match rows.last_mut() {
            Some(row) if n <= 6 => {
                row.orders.push(n);
                row.graphs += graphs.len();
                for (a, b) in row.counts.iter_mut().zip(counts) {
                    *a += b;
                }
            }
            _ => rows.push(ScanRow {
                label: if n <= 6 { "<=6".into() } else { n.to_string() },
                orders: vec![n],
                graphs: graphs.len(),
                counts,
            }),
        }
    }
    Ok(ScanResult { rows, classes })
}
