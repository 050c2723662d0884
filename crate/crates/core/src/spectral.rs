//! The NB Laplacian `L = Id - D^-1 A` and its eigenfunctions.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::linalg::{
    char_poly, eigenvectors, q_to_f64, singular_values, Poly, RationalMatrix, SingularSpectrum,
    Spectrum, Q,
};
use crate::nb::NbGraph;

/// Relative threshold for `|Pf -+ f| <= t |f|`.
pub const SYMMETRY_THRESHOLD: f64 = 1e-6;

pub struct NbLaplacian {
    nb: NbGraph,
    l: RationalMatrix,
    w: RationalMatrix,
    d: RationalMatrix,
    a: RationalMatrix,
    p: RationalMatrix,
    cp_l: OnceLock<Poly>,
    cp_w: OnceLock<Poly>,
}

pub fn build_laplacian(g: &SimpleGraph) -> Result<NbLaplacian> {
    NbLaplacian::new(g)
}

impl NbLaplacian {
    pub fn new(g: &SimpleGraph) -> Result<Self> {
        if g.n() == 0 || g.min_degree() < 2 {
            return Err(Error::Precondition(
                "the NB Laplacian needs min degree >= 2 (D is singular otherwise)".into(),
            ));
        }
        let nb = NbGraph::new(g)?;
        let n = nb.len();
        let a = nb.b_matrix();
        let d = nb.d_matrix();
        let w = RationalMatrix::from_fn(n, n, |i, j| {
            if nb.has_arc(i, j) {
                Q::new(1.into(), nb.out_degree(i).into())
            } else {
                Q::zero()
            }
        });
        let l = &RationalMatrix::identity(n) - &w;
        let p = nb.p_matrix();
        Ok(NbLaplacian { nb, l, w, d, a, p, cp_l: OnceLock::new(), cp_w: OnceLock::new() })
    }

    pub fn nb(&self) -> &NbGraph {
        &self.nb
    }

    pub fn graph(&self) -> &SimpleGraph {
        self.nb.base()
    }

    pub fn dim(&self) -> usize {
        self.nb.len()
    }

    pub fn l(&self) -> &RationalMatrix {
        &self.l
    }

    /// `D^-1 A`.
    pub fn w(&self) -> &RationalMatrix {
        &self.w
    }

    pub fn d(&self) -> &RationalMatrix {
        &self.d
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn p(&self) -> &RationalMatrix {
        &self.p
    }

    pub fn char_poly(&self) -> &Poly {
        self.cp_l.get_or_init(|| char_poly(&self.l))
    }

    /// Characteristic polynomial of `D^-1 A`.
    pub fn char_poly_w(&self) -> &Poly {
        self.cp_w.get_or_init(|| char_poly(&self.w))
    }

    pub fn spectrum(&self, tol: f64) -> Result<Spectrum> {
        Spectrum::from_char_poly("nb_laplacian", self.char_poly(), tol)
    }

    /// `a Id - L`.
    pub fn shifted(&self, a: &Q) -> RationalMatrix {
        self.l.shifted_neg(a)
    }

    pub fn singular_values_shifted(&self, a: &Q, tol: f64) -> Result<SingularSpectrum> {
        singular_values(&self.shifted(a), tol)
    }

    /// `L^T = P L P`, exactly.
    pub fn p_adjoint_identity(&self) -> bool {
        self.l.transpose() == &(&self.p * &self.l) * &self.p
    }

    pub fn row_sums_of_w_are_one(&self) -> bool {
        self.w.row_sums().iter().all(One::is_one)
    }

    /// `L_ij = -B_ij / (deg out(e_i) - 1)` off the diagonal, exactly.
    pub fn off_diagonal_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).filter(|&j| j != i).all(|j| {
                let want = if self.nb.has_arc(i, j) {
                    -Q::new(1.into(), self.nb.out_degree(i).into())
                } else {
                    Q::zero()
                };
                *self.l.get(i, j) == want
            })
        })
    }

    /// Eigenpairs with one basis vector per eigenspace dimension.
    pub fn eigenpairs(&self, tol: f64) -> Result<Vec<EigenPair>> {
        let spec = self.spectrum(tol)?;
        let lc = self.l.to_complex();
        let mut out = Vec::new();
        for c in spec.clusters() {
            for f in eigenvectors(&self.l, c.value) {
                out.push(EigenPair::new(&lc, c.value, f, c.mult));
            }
        }
        Ok(out)
    }

    /// Bases of the symmetric and antisymmetric parts of the eigenspace of
    /// `lambda`: null spaces of `(P -+ Id) V` for an eigenspace basis `V`.
    pub fn symmetry_subspaces(&self, lambda: Complex64) -> (Vec<DVector<Complex64>>, Vec<DVector<Complex64>>) {
        let basis = eigenvectors(&self.l, lambda);
        let n = self.dim();
        let v = DMatrix::from_columns(&basis);
        let p = self.p.to_complex();
        let id = DMatrix::<Complex64>::identity(n, n);
        let part = |sign: f64| -> Vec<DVector<Complex64>> {
            let m = (&p - &id * Complex64::new(sign, 0.0)) * &v;
            let scale = m.norm().max(1.0);
            let svd = m.clone().svd(false, true);
            let v_t = svd.v_t.expect("right vectors");
            (0..svd.singular_values.len())
                .filter(|&i| svd.singular_values[i] <= SYMMETRY_THRESHOLD * scale)
                .map(|i| {
                    let c: DVector<Complex64> = v_t.row(i).adjoint();
                    let f = &v * c;
                    let nrm = f.norm();
                    f / Complex64::new(nrm, 0.0)
                })
                .collect()
        };
        (part(1.0), part(-1.0))
    }

    /// Classifies a representative eigenvector and evaluates the quantities
    /// attached to it.
    pub fn classify_symmetry(&self, pair: &EigenPair) -> EigenfunctionReport {
        let f = &pair.f;
        let nrm = f.norm().max(f64::MIN_POSITIVE);
        let pf = self.apply_p(f);
        let sym = (&pf - f).norm() <= SYMMETRY_THRESHOLD * nrm;
        let anti = (&pf + f).norm() <= SYMMETRY_THRESHOLD * nrm;
        let class = match (sym, anti) {
            (true, _) => SymmetryClass::Symmetric,
            (false, true) => SymmetryClass::Antisymmetric,
            _ => SymmetryClass::Neither,
        };
        EigenfunctionReport {
            lambda_re: pair.lambda.re,
            lambda_im: pair.lambda.im,
            sum_over_edges: pair.f.iter().sum::<Complex64>().norm() / pair.f.iter().map(|z| z.norm()).sum::<f64>(),
            symmetry_class: class,
            p_selfproduct: self.p_product(f, f).norm() / (nrm * nrm),
            flow_balance_residual: self.flow_balance_residual(f),
        }
    }

    pub fn apply_p(&self, f: &DVector<Complex64>) -> DVector<Complex64> {
        DVector::from_fn(self.dim(), |i, _| f[self.nb.reverse(i)])
    }

    /// `(f, g)_P = sum_i f_i conj(g_{rev(i)})`.
    pub fn p_product(&self, f: &DVector<Complex64>, g: &DVector<Complex64>) -> Complex64 {
        (0..self.dim()).map(|i| f[i] * g[self.nb.reverse(i)].conj()).sum()
    }

    /// `max |out-average - in-average| / |f|` over oriented edges, where the
    /// out-average at `[v,w]` is `sum f([w,z]) / (deg w - 1)` over successors
    /// and the in-average is `sum f([y,v]) / (deg v - 1)` over predecessors.
    pub fn flow_balance_residual(&self, f: &DVector<Complex64>) -> f64 {
        let nrm = f.norm().max(f64::MIN_POSITIVE);
        (0..self.dim())
            .map(|i| {
                let out: Complex64 = self.nb.successors(i).iter().map(|&j| f[j]).sum();
                let inc: Complex64 = self.nb.predecessors(i).iter().map(|&j| f[j]).sum();
                let d_out = self.nb.out_degree(i) as f64;
                let d_in = self.nb.out_degree(self.nb.reverse(i)) as f64;
                (out / d_out - inc / d_in).norm()
            })
            .fold(0.0, f64::max)
            / nrm
    }
}

#[derive(Clone, Debug)]
pub struct EigenPair {
    pub lambda: Complex64,
    pub f: DVector<Complex64>,
    /// `|Lf - lambda f| / |f|`
    pub residual: f64,
    /// Algebraic multiplicity of `lambda`.
    pub multiplicity: usize,
}

impl EigenPair {
    pub fn new(l: &DMatrix<Complex64>, lambda: Complex64, f: DVector<Complex64>, multiplicity: usize) -> Self {
        let residual = (l * &f - &f * lambda).norm() / f.norm();
        EigenPair { lambda, f, residual, multiplicity }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    Symmetric,
    Antisymmetric,
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenfunctionReport {
    pub lambda_re: f64,
    pub lambda_im: f64,
    /// `|sum f| / |f|_1`
    pub sum_over_edges: f64,
    pub symmetry_class: SymmetryClass,
    /// `|(f, f)_P| / |f|^2`
    pub p_selfproduct: f64,
    pub flow_balance_residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroMultiplicity {
    pub mult_zero: usize,
    pub nb_components: usize,
    pub graph_components: usize,
    pub has_cycle_component: bool,
    pub consistent: bool,
}

pub fn zero_multiplicity_check(g: &SimpleGraph) -> Result<ZeroMultiplicity> {
    let lap = NbLaplacian::new(g)?;
    let mult_zero = lap.char_poly().root_multiplicity(&Q::zero());
    let nb_components = lap.nb().weak_components().len();
    let graph_components = g.components().len();
    let has_cycle_component = g.has_cycle_component();
    Ok(ZeroMultiplicity {
        mult_zero,
        nb_components,
        graph_components,
        has_cycle_component,
        consistent: mult_zero == nb_components && (has_cycle_component || nb_components == graph_components),
    })
}

/// `|sum f| / |f|_1` for an eigenpair with `lambda != 0`.
pub fn eigenpair_sum_zero(pair: &EigenPair, tol: f64) -> Result<f64> {
    if pair.lambda.norm() <= tol {
        return Err(Error::Precondition("sum-zero property needs lambda != 0".into()));
    }
    let l1: f64 = pair.f.iter().map(|z| z.norm()).sum();
    Ok(pair.f.iter().sum::<Complex64>().norm() / l1)
}

/// Random-walk Laplacian `Id - D^-1 A` of a simple graph without isolated vertices.
pub fn random_walk_laplacian(g: &SimpleGraph) -> Result<RationalMatrix> {
    if g.n() == 0 || g.min_degree() == 0 {
        return Err(Error::Precondition("random-walk Laplacian needs min degree >= 1".into()));
    }
    Ok(RationalMatrix::from_fn(g.n(), g.n(), |i, j| {
        if i == j {
            Q::one()
        } else if g.has_edge(i, j) {
            -Q::new(1.into(), g.degree(i).into())
        } else {
            Q::zero()
        }
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetricTransfer {
    pub lambda: f64,
    /// `|LP f - lambda f| / |f|`
    pub lp_residual: f64,
    /// `|L_LG f~ - lambda f~| / |f~|`
    pub line_graph_residual: f64,
    /// Distance from `lambda` to the independently computed line-graph spectrum.
    pub line_graph_distance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LpReport {
    pub lp_symmetric: bool,
    pub transfers: Vec<SymmetricTransfer>,
}

pub fn symmetric_lp_equivalence(g: &SimpleGraph, tol: f64) -> Result<LpReport> {
    let lap = NbLaplacian::new(g)?;
    let lp = lap.l() * lap.p();
    let lp_symmetric = lp.is_symmetric();
    let lg = g.line_graph()?;
    let lg_l = random_walk_laplacian(&lg)?;
    let lg_spec = Spectrum::from_char_poly("line_graph_rw", &char_poly(&lg_l), tol)?;
    let lg_c = lg_l.to_complex();
    let lp_c = lp.to_complex();
    let m = g.m();
    let mut transfers = Vec::new();
    for c in lap.spectrum(tol)?.clusters() {
        let (sym, _) = lap.symmetry_subspaces(c.value);
        for f in sym {
            let lambda = c.value;
            let lp_residual = (&lp_c * &f - &f * lambda).norm() / f.norm();
            let ft = DVector::from_fn(m, |i, _| f[i]);
            let line_graph_residual = (&lg_c * &ft - &ft * lambda).norm() / ft.norm();
            let line_graph_distance = lg_spec
                .clusters()
                .iter()
                .map(|x| (x.value - lambda).norm())
                .fold(f64::INFINITY, f64::min);
            transfers.push(SymmetricTransfer { lambda: lambda.re, lp_residual, line_graph_residual, line_graph_distance });
        }
    }
    Ok(LpReport { lp_symmetric, transfers })
}

/// Reconstructs `f` from its values `k` NB steps ahead:
/// `f(e) = (1 - lambda)^-k sum_walks prod 1/(deg - 1) f(end)`, by explicit
/// walk enumeration. Returns `max_e |reconstructed - f(e)| / max |f|`.
pub fn nk_determination_check(lap: &NbLaplacian, pair: &EigenPair, k: usize) -> Result<f64> {
    let one_minus = Complex64::new(1.0, 0.0) - pair.lambda;
    if one_minus.norm() <= 1e-12 {
        return Err(Error::Precondition("walk reconstruction needs lambda != 1".into()));
    }
    let nb = lap.nb();
    let fmax = pair.f.iter().map(|z| z.norm()).fold(0.0, f64::max);
    fn walk(nb: &NbGraph, f: &DVector<Complex64>, e: usize, steps: usize, weight: f64) -> Complex64 {
        if steps == 0 {
            return f[e] * weight;
        }
        let w = weight / nb.out_degree(e) as f64;
        nb.successors(e).iter().map(|&x| walk(nb, f, x, steps - 1, w)).sum()
    }
    let scale = one_minus.powu(k as u32).inv();
    Ok((0..nb.len())
        .map(|e| (walk(nb, &pair.f, e, k, 1.0) * scale - pair.f[e]).norm())
        .fold(0.0, f64::max)
        / fmax)
}

#[derive(Clone, Debug, Serialize)]
pub struct POrthogonalityReport {
    /// Pairs `(f, g)` with `conj(lambda) != mu` checked.
    pub pairs_checked: usize,
    /// Largest `|(f, g)_P| / (|f||g|)` over those pairs, excluding pairs
    /// drawn from one eigenspace of multiplicity > 1.
    pub max_cross: f64,
    /// Largest `|(f, f)_P| / |f|^2` over non-real eigenpairs.
    pub max_self_nonreal: f64,
    /// Pairs inside a degenerate eigenspace exceeding the tolerance.
    pub degenerate_flagged: usize,
}

pub fn p_orthogonality(lap: &NbLaplacian, pairs: &[EigenPair], tol: f64) -> POrthogonalityReport {
    let mut rep = POrthogonalityReport { pairs_checked: 0, max_cross: 0.0, max_self_nonreal: 0.0, degenerate_flagged: 0 };
    for (i, a) in pairs.iter().enumerate() {
        let na = a.f.norm();
        if a.lambda.im.abs() > tol {
            let v = lap.p_product(&a.f, &a.f).norm() / (na * na);
            rep.max_self_nonreal = rep.max_self_nonreal.max(v);
        }
        for b in &pairs[i + 1..] {
            if (a.lambda.conj() - b.lambda).norm() <= 1e-6 {
                continue;
            }
            rep.pairs_checked += 1;
            let v = lap.p_product(&a.f, &b.f).norm() / (na * b.f.norm());
            let same_space = (a.lambda - b.lambda).norm() <= 1e-6 && a.multiplicity > 1;
            if same_space {
                if v > tol {
                    rep.degenerate_flagged += 1;
                }
            } else {
                rep.max_cross = rep.max_cross.max(v);
            }
        }
    }
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeReport {
    pub a: String,
    pub s2: f64,
    pub s_max: f64,
    pub min_distance: f64,
    pub max_distance: f64,
    pub lower_violations: usize,
    pub upper_violations: usize,
    pub worst_lower_gap: f64,
}

impl EnvelopeReport {
    pub fn holds(&self) -> bool {
        self.lower_violations == 0 && self.upper_violations == 0
    }
}

/// `s_2(a Id - L) - tol <= |lambda - a| <= s_2M(a Id - L) + tol` for every
/// eigenvalue `lambda != 0`.
pub fn modulus_envelope(g: &SimpleGraph, a: &Q, tol: f64) -> Result<EnvelopeReport> {
    let lap = NbLaplacian::new(g)?;
    if !lap.nb().is_weakly_connected() {
        return Err(Error::Precondition("modulus envelope needs a connected NB graph".into()));
    }
    modulus_envelope_for(&lap, a, tol)
}

pub fn modulus_envelope_for(lap: &NbLaplacian, a: &Q, tol: f64) -> Result<EnvelopeReport> {
    let s = lap.singular_values_shifted(a, tol)?;
    let spec = lap.spectrum(tol)?;
    let af = q_to_f64(a);
    let (s2, s_max) = (s.s(2), s.largest());
    let mut rep = EnvelopeReport {
        a: a.to_string(),
        s2,
        s_max,
        min_distance: f64::INFINITY,
        max_distance: 0.0,
        lower_violations: 0,
        upper_violations: 0,
        worst_lower_gap: 0.0,
    };
    for c in spec.clusters() {
        if c.value.norm() == 0.0 {
            continue;
        }
        let d = (c.value - af).norm();
        rep.min_distance = rep.min_distance.min(d);
        rep.max_distance = rep.max_distance.max(d);
        if d < s2 - tol {
            rep.lower_violations += c.mult;
            rep.worst_lower_gap = rep.worst_lower_gap.max(s2 - d);
        }
        if d > s_max + tol {
            rep.upper_violations += c.mult;
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_graphs;
    use crate::graph::Family;
    use crate::linalg::{eigenvalues, q};

    fn fam(s: &str) -> SimpleGraph {
        s.parse::<Family>().unwrap().build().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn build_examples() {
        let c3 = NbLaplacian::new(&fam("cycle:3")).unwrap();
        assert_eq!(c3.l(), &(&RationalMatrix::identity(6) - c3.a()));
        let k4 = NbLaplacian::new(&fam("complete:4")).unwrap();
        assert_eq!(k4.dim(), 12);
        for i in 0..12 {
            for j in 0..12 {
                if i != j {
                    assert!([q(0, 1), q(-1, 2)].contains(k4.l().get(i, j)));
                }
            }
        }
        let petal = NbLaplacian::new(&fam("petal:2,3")).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..12 {
            for j in 0..12 {
                if i != j {
                    seen.insert(petal.l().get(i, j).clone());
                }
            }
        }
        assert_eq!(seen, [q(-1, 1), q(-1, 3), q(0, 1)].into_iter().collect());
        assert!(matches!(NbLaplacian::new(&fam("path:3")), Err(Error::Precondition(_))));
    }

    #[test]
    fn exact_identities() {
        for g in enumerate_graphs(5, 2).unwrap() {
            let lap = NbLaplacian::new(&g).unwrap();
            assert!(lap.p_adjoint_identity());
            assert!(lap.row_sums_of_w_are_one());
            assert!(lap.off_diagonal_identity());
            assert_eq!(lap.d() * lap.w(), *lap.a());
        }
    }

    #[test]
    fn four_cycle_spectrum() {
        let lap = NbLaplacian::new(&fam("cycle:4")).unwrap();
        let s = lap.spectrum(1e-8).unwrap();
        let want = [c(0.0, 0.0), c(1.0, -1.0), c(1.0, 1.0), c(2.0, 0.0)];
        assert_eq!(s.clusters().len(), 4);
        for (cl, w) in s.clusters().iter().zip(want) {
            assert_eq!(cl.mult, 2);
            assert!((cl.value - w).norm() < 1e-12);
        }
    }

    #[test]
    fn complete_four_spectrum() {
        // Ihara-type factorization for 3-regular K4: 0, 1/2 (x3), 3/2 (x2), (5 -+ i sqrt 7)/4 (x3 each)
        let s = NbLaplacian::new(&fam("complete:4")).unwrap().spectrum(1e-8).unwrap();
        let r7 = 7f64.sqrt() / 4.0;
        let want = [(c(0.0, 0.0), 1), (c(0.5, 0.0), 3), (c(1.25, -r7), 3), (c(1.25, r7), 3), (c(1.5, 0.0), 2)];
        assert_eq!(s.clusters().len(), want.len());
        for (cl, (w, m)) in s.clusters().iter().zip(want) {
            assert_eq!(cl.mult, m);
            assert!((cl.value - w).norm() < 1e-12, "{} vs {}", cl.value, w);
        }
    }

    #[test]
    fn spectra_of_p_and_ap() {
        let g = fam("petal:2,3");
        let lap = NbLaplacian::new(&g).unwrap();
        let sp = eigenvalues(lap.p(), 1e-8).unwrap();
        assert_eq!(sp.multiplicity_near(c(1.0, 0.0), 1e-9), 6);
        assert_eq!(sp.multiplicity_near(c(-1.0, 0.0), 1e-9), 6);
        // A P: -1 with multiplicity 2M - N, and deg v - 1 for each vertex
        let ap = eigenvalues(&(lap.a() * lap.p()), 1e-8).unwrap();
        assert_eq!(ap.multiplicity_near(c(-1.0, 0.0), 1e-9), 12 - 5);
        assert_eq!(ap.multiplicity_near(c(1.0, 0.0), 1e-9), 4);
        assert_eq!(ap.multiplicity_near(c(3.0, 0.0), 1e-9), 1);
    }

    #[test]
    fn spectrum_in_disc_and_trace() {
        for g in enumerate_graphs(5, 2).unwrap() {
            let lap = NbLaplacian::new(&g).unwrap();
            let s = lap.spectrum(1e-8).unwrap();
            assert!((s.sum() - c(2.0 * g.m() as f64, 0.0)).norm() < 1e-9);
            assert!(s.values().iter().all(|z| (c(1.0, 0.0) - z).norm() <= 1.0 + 1e-8));
            assert!(s.is_conjugation_symmetric(1e-8));
            let cp = lap.char_poly();
            for z in s.values() {
                let (p, _) = crate::linalg::roots::ExactEvaluator::new(cp).eval(z);
                assert!(p.norm() < 1e-6, "{p}");
            }
        }
    }

    #[test]
    fn zero_multiplicity_examples() {
        let r = zero_multiplicity_check(&fam("complete:4")).unwrap();
        assert_eq!((r.mult_zero, r.nb_components), (1, 1));
        let r = zero_multiplicity_check(&fam("cycle:4")).unwrap();
        assert_eq!((r.mult_zero, r.nb_components), (2, 2));
        let k4 = fam("complete:4");
        let r = zero_multiplicity_check(&k4.disjoint_union(&k4)).unwrap();
        assert_eq!((r.mult_zero, r.nb_components), (2, 2));
        assert!(r.consistent);
    }

    #[test]
    fn sum_zero_examples() {
        let lap = NbLaplacian::new(&fam("complete:4")).unwrap();
        let pairs = lap.eigenpairs(1e-8).unwrap();
        let halves: Vec<_> = pairs.iter().filter(|p| (p.lambda - c(0.5, 0.0)).norm() < 1e-9).collect();
        assert_eq!(halves.len(), 3);
        for p in halves {
            assert!(eigenpair_sum_zero(p, 1e-8).unwrap() < 1e-10);
        }
        // explicit alternating eigenfunction of bipartite C6 at lambda = 2
        let c6 = NbLaplacian::new(&fam("cycle:6")).unwrap();
        let side = fam("cycle:6").bipartition().unwrap();
        let f = DVector::from_fn(12, |i, _| c(if side[c6.nb().vertex(i).inp] == 0 { 1.0 } else { -1.0 }, 0.0));
        let pair = EigenPair::new(&c6.l().to_complex(), c(2.0, 0.0), f, 2);
        assert!(pair.residual < 1e-14);
        assert!(eigenpair_sum_zero(&pair, 1e-8).unwrap() < 1e-15);
        let ones = EigenPair::new(&c6.l().to_complex(), c(0.0, 0.0), DVector::from_element(12, c(1.0, 0.0)), 2);
        assert!(matches!(eigenpair_sum_zero(&ones, 1e-8), Err(Error::Precondition(_))));
    }

    #[test]
    fn regular_symmetry_classes() {
        for (s, d, bip) in [("complete:4", 3.0, false), ("bipartite:3,3", 3.0, true), ("complete:5", 4.0, false)] {
            let g = fam(s);
            let lap = NbLaplacian::new(&g).unwrap();
            let excess = g.m() as f64 - g.n() as f64;
            let (_, anti) = lap.symmetry_subspaces(c(1.0 - 1.0 / (d - 1.0), 0.0));
            assert_eq!(anti.len() as f64, excess + 1.0, "{s}");
            let (sym, _) = lap.symmetry_subspaces(c(1.0 + 1.0 / (d - 1.0), 0.0));
            assert_eq!(sym.len() as f64, excess + if bip { 1.0 } else { 0.0 }, "{s}");
            for f in anti.iter().chain(&sym) {
                assert!(lap.flow_balance_residual(f) < 1e-10);
            }
        }
    }

    #[test]
    fn petal_generic_pairs_are_neither() {
        let lap = NbLaplacian::new(&fam("petal:2,3")).unwrap();
        let pairs = lap.eigenpairs(1e-8).unwrap();
        let complex: Vec<_> = pairs.iter().filter(|p| p.lambda.im.abs() > 1e-6).collect();
        assert!(!complex.is_empty());
        for p in complex {
            let r = lap.classify_symmetry(p);
            assert_eq!(r.symmetry_class, SymmetryClass::Neither);
            assert!(r.p_selfproduct < 1e-10);
        }
    }

    #[test]
    fn lp_transfer_examples() {
        for s in ["complete:4", "cycle:3", "petal:2,3"] {
            let r = symmetric_lp_equivalence(&fam(s), 1e-8).unwrap();
            assert!(r.lp_symmetric);
            assert!(!r.transfers.is_empty());
            for t in &r.transfers {
                assert!(t.lp_residual < 1e-10 && t.line_graph_residual < 1e-10 && t.line_graph_distance < 1e-10, "{s} {t:?}");
            }
        }
        let r = symmetric_lp_equivalence(&fam("complete:4"), 1e-8).unwrap();
        assert_eq!(r.transfers.iter().filter(|t| (t.lambda - 1.5).abs() < 1e-9).count(), 2);
    }

    #[test]
    fn walk_reconstruction() {
        for (s, k) in [("complete:4", 1), ("complete:4", 2), ("petal:2,3", 3)] {
            let lap = NbLaplacian::new(&fam(s)).unwrap();
            for pair in lap.eigenpairs(1e-8).unwrap() {
                assert!(nk_determination_check(&lap, &pair, k).unwrap() < 1e-9, "{s} k={k}");
            }
        }
    }

    #[test]
    fn p_orthogonality_examples() {
        for s in ["petal:2,3", "complete:4"] {
            let lap = NbLaplacian::new(&fam(s)).unwrap();
            let pairs = lap.eigenpairs(1e-8).unwrap();
            let r = p_orthogonality(&lap, &pairs, 1e-6);
            assert!(r.pairs_checked > 0);
            assert!(r.max_cross < 1e-9 && r.max_self_nonreal < 1e-9, "{s} {r:?}");
        }
        // the conjugate pair is outside the hypothesis and generally not orthogonal
        let lap = NbLaplacian::new(&fam("complete:4")).unwrap();
        let pairs = lap.eigenpairs(1e-8).unwrap();
        let f = pairs.iter().find(|p| p.lambda.im > 1e-6).unwrap();
        let fbar = f.f.map(|z| z.conj());
        assert!(lap.p_product(&f.f, &fbar).norm() > 1e-3);
    }

    #[test]
    fn envelope_examples() {
        let k4 = fam("complete:4");
        let r = modulus_envelope(&k4, &q(0, 1), 1e-8).unwrap();
        assert!(r.holds());
        let r = modulus_envelope(&k4, &q(1, 1), 1e-8).unwrap();
        assert!((r.s2 - 0.5).abs() < 1e-12 && (r.min_distance - 0.5).abs() < 1e-12);
        assert!(r.holds());
        let r = modulus_envelope(&fam("petal:2,3"), &q(1, 1), 1e-8).unwrap();
        assert!(r.holds());
        assert!((r.s2 - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.min_distance - 3f64.powf(-1.0 / 3.0)).abs() < 1e-12);
        assert!(matches!(modulus_envelope(&fam("cycle:5"), &q(0, 1), 1e-8), Err(Error::Precondition(_))));
    }
}
