//! Circularly k-partite graphs.
//!
//! A graph is circularly k-partite when its oriented edges split into
//! non-empty classes `V_0..V_{k-1}` with every NB arc leading from `V_j` to
//! `V_{j+1 mod k}`. The constraint `label(succ) = label + 1` is a potential
//! problem: within a weakly connected component of the NB graph, integer
//! potentials are fixed up to an offset and every constraint cycle adds a
//! discrepancy, so `k` is admissible on that component iff it divides the gcd
//! of the discrepancies. Components then shift independently to cover all
//! residues.

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::linalg::Poly;
use crate::nb::NbGraph;
use crate::spectral::NbLaplacian;

/// Largest NB vertex count for [`brute_force_partite`].
pub const BRUTE_FORCE_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircularPartition {
    pub k: usize,
    /// Residue of each oriented edge, in NB vertex order.
    pub labels: Vec<usize>,
}

impl CircularPartition {
    /// Both defining conditions, checked directly on the NB graph.
    pub fn is_valid_for(&self, nb: &NbGraph) -> bool {
        let arcs_ok = nb.arcs().iter().all(|&(i, j)| self.labels[j] == (self.labels[i] + 1) % self.k);
        let mut seen = vec![false; self.k];
        for &l in &self.labels {
            seen[l] = true;
        }
        arcs_ok && self.labels.len() == nb.len() && seen.iter().all(|&s| s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartiteReport {
    pub feasible_k: Vec<usize>,
    pub max_k: usize,
    pub witness: CircularPartition,
    /// Discrepancy gcd per weakly connected NB component (0 = unconstrained).
    pub component_gcds: Vec<u64>,
}

impl PartiteReport {
    pub fn is_feasible(&self, k: usize) -> bool {
        self.feasible_k.contains(&k)
    }
}

struct Potentials {
    comps: Vec<Vec<usize>>,
    pot: Vec<i64>,
    gcds: Vec<u64>,
}

fn potentials(nb: &NbGraph) -> Potentials {
    let n = nb.len();
    let comps = nb.weak_components();
    let mut pot = vec![0i64; n];
    let mut set = vec![false; n];
    let mut gcds = Vec::with_capacity(comps.len());
    for comp in &comps {
        let root = comp[0];
        set[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let forward = nb.successors(v).iter().map(|&w| (w, pot[v] + 1));
            let backward = nb.predecessors(v).iter().map(|&w| (w, pot[v] - 1));
            let next: Vec<(usize, i64)> = forward.chain(backward).collect();
            for (w, p) in next {
                if !set[w] {
                    set[w] = true;
                    pot[w] = p;
                    queue.push_back(w);
                }
            }
        }
        let g = comp
            .iter()
            .flat_map(|&v| nb.successors(v).iter().map(move |&w| (v, w)))
            .fold(0u64, |acc, (v, w)| acc.gcd(&(pot[w] - pot[v] - 1).unsigned_abs()));
        gcds.push(g);
    }
    Potentials { comps, pot, gcds }
}

/// Offsets per component whose shifted residue sets cover `0..k`, if any.
fn cover_offsets(residues: &[Vec<bool>], k: usize) -> Option<Vec<usize>> {
    let c = residues.len();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(residues[i].iter().filter(|&&b| b).count()));

    // greedy: each component takes the shift adding the most new residues
    let mut covered = vec![false; k];
    let mut offsets = vec![0; c];
    for &i in &order {
        let best = (0..k)
            .max_by_key(|&s| {
                let gain = (0..k).filter(|&r| residues[i][r] && !covered[(r + s) % k]).count();
                (gain, std::cmp::Reverse(s))
            })
            .expect("k >= 1");
        offsets[i] = best;
        for r in (0..k).filter(|&r| residues[i][r]) {
            covered[(r + best) % k] = true;
        }
    }
    if covered.iter().all(|&b| b) {
        return Some(offsets);
    }

    // exhaustive over shifts, pruned by the residues still coverable
    let sizes: Vec<usize> = order.iter().map(|&i| residues[i].iter().filter(|&&b| b).count()).collect();
    let mut suffix = vec![0; c + 1];
    for t in (0..c).rev() {
        suffix[t] = suffix[t + 1] + sizes[t];
    }
    fn search(
        t: usize,
        order: &[usize],
        residues: &[Vec<bool>],
        suffix: &[usize],
        k: usize,
        count: &mut [usize],
        offsets: &mut [usize],
    ) -> bool {
        let uncovered = count.iter().filter(|&&x| x == 0).count();
        if uncovered == 0 {
            return true;
        }
        if t == order.len() || suffix[t] < uncovered {
            return false;
        }
        let i = order[t];
        // the first component's shift is fixed by rotational symmetry
        let shifts = if t == 0 { 1 } else { k };
        for s in 0..shifts {
            for r in (0..k).filter(|&r| residues[i][r]) {
                count[(r + s) % k] += 1;
            }
            offsets[i] = s;
            if search(t + 1, order, residues, suffix, k, count, offsets) {
                return true;
            }
            for r in (0..k).filter(|&r| residues[i][r]) {
                count[(r + s) % k] -= 1;
            }
        }
        false
    }
    let mut count = vec![0; k];
    search(0, &order, residues, &suffix, k, &mut count, &mut offsets).then_some(offsets)
}

fn partition_for(p: &Potentials, k: usize) -> Option<Vec<usize>> {
    if p.gcds.iter().any(|&g| g % k as u64 != 0) {
        return None;
    }
    let residues: Vec<Vec<bool>> = p
        .comps
        .iter()
        .map(|comp| {
            let mut r = vec![false; k];
            for &v in comp {
                r[p.pot[v].rem_euclid(k as i64) as usize] = true;
            }
            r
        })
        .collect();
    let offsets = cover_offsets(&residues, k)?;
    let mut labels = vec![0; p.pot.len()];
    for (ci, comp) in p.comps.iter().enumerate() {
        for &v in comp {
            labels[v] = (p.pot[v].rem_euclid(k as i64) as usize + offsets[ci]) % k;
        }
    }
    Some(labels)
}

/// A circular k-partition of the oriented edges, if one exists.
pub fn circular_partition(nb: &NbGraph, k: usize) -> Option<CircularPartition> {
    if k == 0 || k > nb.len() {
        return None;
    }
    partition_for(&potentials(nb), k).map(|labels| CircularPartition { k, labels })
}

pub fn circular_partite_analysis(g: &SimpleGraph) -> Result<PartiteReport> {
    if g.n() == 0 || g.min_degree() < 1 {
        return Err(Error::Precondition("circular partite analysis needs min degree >= 1".into()));
    }
    let nb = NbGraph::new(g)?;
    let p = potentials(&nb);
    let mut feasible_k = Vec::new();
    let mut witness = None;
    for k in 1..=nb.len() {
        if let Some(labels) = partition_for(&p, k) {
            feasible_k.push(k);
            witness = Some(CircularPartition { k, labels });
        }
    }
    let witness = witness.expect("k = 1 is always feasible");
    Ok(PartiteReport { max_k: witness.k, feasible_k, witness, component_gcds: p.gcds })
}

/// Ground truth by constraint backtracking over residue assignments.
pub fn brute_force_partite(g: &SimpleGraph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let nb = NbGraph::new(g)?;
    let n = nb.len();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Capability(format!("brute-force partite search capped at 2M <= {BRUTE_FORCE_CAP}")));
    }
    if k > n {
        return Ok(false);
    }
    // breadth-first order over the underlying undirected graph
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in nb.successors(v).iter().chain(nb.predecessors(v)) {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut labels = vec![usize::MAX; n];
    let mut count = vec![0usize; k];
    fn assign(t: usize, order: &[usize], nb: &NbGraph, k: usize, labels: &mut [usize], count: &mut [usize]) -> bool {
        let uncovered = count.iter().filter(|&&c| c == 0).count();
        if uncovered > order.len() - t {
            return false;
        }
        if t == order.len() {
            return true;
        }
        let v = order[t];
        for r in 0..k {
            let ok = nb.successors(v).iter().all(|&w| labels[w] == usize::MAX || labels[w] == (r + 1) % k)
                && nb.predecessors(v).iter().all(|&w| labels[w] == usize::MAX || (labels[w] + 1) % k == r);
            if !ok {
                continue;
            }
            labels[v] = r;
            count[r] += 1;
            if assign(t + 1, order, nb, k, labels, count) {
                return true;
            }
            count[r] -= 1;
            labels[v] = usize::MAX;
        }
        false
    }
    Ok(assign(0, &order, &nb, k, &mut labels, &mut count))
}

#[derive(Clone, Debug, Serialize)]
pub struct RootsOfUnityReport {
    pub k: usize,
    /// `x^k - 1` divides the characteristic polynomial of `D^-1 A`.
    pub divides: bool,
    /// Largest `|W f - w f| / |f|` over `w = e^(2 pi i m / k)` with `f = w^label`.
    pub eigenfunction_residual: f64,
}

pub fn roots_of_unity_eigenvalues(g: &SimpleGraph, k: usize) -> Result<RootsOfUnityReport> {
    let lap = NbLaplacian::new(g)?;
    let labels = partition_for(&potentials(lap.nb()), k)
        .ok_or_else(|| Error::Precondition(format!("graph is not circularly {k}-partite")))?;
    roots_of_unity_for(&lap, &CircularPartition { k, labels })
}

pub fn roots_of_unity_for(lap: &NbLaplacian, part: &CircularPartition) -> Result<RootsOfUnityReport> {
    let k = part.k;
    let divides = Poly::x_pow_minus_one(k).divides(lap.char_poly_w());
    let w = lap.w().to_complex();
    let mut worst = 0.0f64;
    for m in 0..k {
        let omega = Complex64::from_polar(1.0, std::f64::consts::TAU * m as f64 / k as f64);
        let f = nalgebra::DVector::from_fn(lap.dim(), |i, _| omega.powu(part.labels[i] as u32));
        worst = worst.max((&w * &f - &f * omega).norm() / f.norm());
    }
    Ok(RootsOfUnityReport { k, divides, eigenfunction_residual: worst })
}
