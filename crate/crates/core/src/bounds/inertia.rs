//! Inertia-type bounds: independence numbers against singular value counts.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::graph::SimpleGraph;
use crate::linalg::{char_poly, q, q_to_f64, Poly, RationalMatrix, Q};
use crate::spectral::NbLaplacian;

use super::independence::{independence_numbers, IndependenceReport};

#[derive(Clone, Debug, Serialize)]
pub struct InertiaCheck {
    pub name: String,
    /// The independence number on the left.
    pub alpha: usize,
    pub threshold: f64,
    pub count: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InertiaReport {
    pub a: String,
    pub independence: IndependenceReport,
    pub checks: Vec<InertiaCheck>,
    /// `L^T L` equals the entry formulas exactly.
    pub gram_l_formula: bool,
    /// `(D^-1 A)^T D^-1 A` equals the entry formulas exactly.
    pub gram_w_formula: bool,
    /// The spectrum of `(D^-1 A)^T D^-1 A` is `1` (N times) and
    /// `1/(deg v - 1)^2` (`deg v - 1` times per vertex), exactly.
    pub gram_w_spectrum: bool,
    pub s2_identity_minus_l: f64,
    pub s2_expected: f64,
    pub s2_holds: bool,
}

impl InertiaReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
            && self.gram_l_formula
            && self.gram_w_formula
            && self.gram_w_spectrum
            && self.s2_holds
            && self.independence.alpha_s_out <= self.independence.alpha_out
    }
}

fn deg_minus_one(lap: &NbLaplacian, v: usize) -> Q {
    q(lap.graph().degree(v) as i64 - 1, 1)
}

/// `L^T L` assembled from its entry formulas.
pub fn gram_l_from_formulas(lap: &NbLaplacian) -> RationalMatrix {
    let nb = lap.nb();
    let n = nb.len();
    RationalMatrix::from_fn(n, n, |i, j| {
        let (ei, ej) = (nb.vertex(i), nb.vertex(j));
        if i == j {
            let d1 = deg_minus_one(lap, ei.inp);
            return (&d1 + q(1, 1)) / d1;
        }
        if nb.has_arc(i, j) || nb.has_arc(j, i) {
            let middle = if nb.has_arc(i, j) { ei.out } else { ej.out };
            return -(deg_minus_one(lap, middle).recip());
        }
        if ei.inp == ej.inp {
            let d1 = deg_minus_one(lap, ei.inp);
            return (&d1 - q(1, 1)) / (&d1 * &d1);
        }
        Q::zero()
    })
}

/// `(D^-1 A)^T D^-1 A` assembled from its entry formulas.
pub fn gram_w_from_formulas(lap: &NbLaplacian) -> RationalMatrix {
    let nb = lap.nb();
    let n = nb.len();
    RationalMatrix::from_fn(n, n, |i, j| {
        let (ei, ej) = (nb.vertex(i), nb.vertex(j));
        if ei.inp != ej.inp {
            return Q::zero();
        }
        let d1 = deg_minus_one(lap, ei.inp);
        if i == j {
            d1.recip()
        } else {
            (&d1 - q(1, 1)) / (&d1 * &d1)
        }
    })
}

fn gram_w_char_poly_formula(g: &SimpleGraph) -> Poly {
    let mut p = Poly::one();
    for _ in 0..g.n() {
        p = &p * &Poly::linear_root(&q(1, 1));
    }
    for v in 0..g.n() {
        let d1 = g.degree(v) as i64 - 1;
        let root = q(1, d1 * d1);
        for _ in 0..d1 {
            p = &p * &Poly::linear_root(&root);
        }
    }
    p
}

pub fn inertia_bounds_check(g: &SimpleGraph, a: &Q, tol: f64) -> Result<InertiaReport> {
    let lap = NbLaplacian::new(g)?;
    inertia_bounds_check_for(&lap, a, tol)
}

pub fn inertia_bounds_check_for(lap: &NbLaplacian, a: &Q, tol: f64) -> Result<InertiaReport> {
    let g = lap.graph();
    let ind = independence_numbers(lap.nb())?;
    let s_l = lap.singular_values_shifted(&Q::zero(), tol)?;
    let s_a = lap.singular_values_shifted(a, tol)?;
    let s_w = lap.singular_values_shifted(&q(1, 1), tol)?;
    let (dl, dh) = (g.min_degree() as f64, g.max_degree() as f64);
    let af = q_to_f64(a);
    let shift = (af - 1.0) * (af - 1.0);
    let (aso, ao) = (ind.alpha_s_out, ind.alpha_out);

    let mut checks = Vec::new();
    let mut add = |name: &str, alpha: usize, threshold: f64, count: usize| {
        checks.push(InertiaCheck { name: name.into(), alpha, threshold, count, holds: alpha <= count });
    };
    let t = (dl / (dl - 1.0)).sqrt();
    add("alpha_s_out <= #{s_i(L) <= sqrt(delta/(delta-1))}", aso, t, s_l.count_at_most(t, tol));
    let t = (dh / (dh - 1.0)).sqrt();
    add("alpha_s_out <= #{s_i(L) >= sqrt(Delta/(Delta-1))}", aso, t, s_l.count_at_least(t, tol));
    let t = (shift + 1.0 / (dl - 1.0)).sqrt();
    add("alpha_s_out <= #{s_i(a Id - L) <= sqrt((a-1)^2 + 1/(delta-1))}", aso, t, s_a.count_at_most(t, tol));
    let t = (shift + 1.0 / (dh - 1.0)).sqrt();
    add("alpha_s_out <= #{s_i(a Id - L) >= sqrt((a-1)^2 + 1/(Delta-1))}", aso, t, s_a.count_at_least(t, tol));
    let t = (1.0 / (dl - 1.0)).sqrt();
    add("alpha_out <= #{s_i(Id - L) <= sqrt(1/(delta-1))}", ao, t, s_w.count_at_most(t, tol));
    let t = (1.0 / (dh - 1.0)).sqrt();
    add("alpha_out <= #{s_i(Id - L) >= sqrt(1/(Delta-1))}", ao, t, s_w.count_at_least(t, tol));

    let l = lap.l();
    let gram_l = &l.transpose() * l;
    let gram_w = &lap.w().transpose() * lap.w();
    let s2 = s_w.s(2);
    let expected = 1.0 / (dh - 1.0);
    Ok(InertiaReport {
        a: a.to_string(),
        independence: ind,
        checks,
        gram_l_formula: gram_l == gram_l_from_formulas(lap),
        gram_w_formula: gram_w == gram_w_from_formulas(lap),
        gram_w_spectrum: char_poly(&gram_w) == gram_w_char_poly_formula(g),
        s2_identity_minus_l: s2,
        s2_expected: expected,
        s2_holds: (s2 - expected).abs() <= tol,
    })
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

    #[test]
    fn complete_four() {
        let r = inertia_bounds_check(&fam("complete:4"), &q(1, 1), DEFAULT_TOL).unwrap();
        assert_eq!(r.independence.alpha_out, 4);
        assert!(r.checks[4].count >= 4);
        assert!((r.checks[4].threshold - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((r.checks[0].threshold - 1.5f64.sqrt()).abs() < 1e-15);
        assert!(r.holds(), "{r:?}");
        assert!((r.s2_identity_minus_l - 0.5).abs() < 1e-12);
    }

    #[test]
    fn petal_with_zero_shift() {
        let r = inertia_bounds_check(&fam("petal:2,3"), &q(0, 1), DEFAULT_TOL).unwrap();
        assert!(r.checks[2].holds && r.checks[3].holds);
        assert!(r.holds());
    }

    #[test]
    fn formulas_over_small_graphs() {
        for g in enumerate_graphs(5, 2).unwrap() {
            for a in [q(0, 1), q(1, 1), q(1, 2), q(-3, 2)] {
                let r = inertia_bounds_check(&g, &a, DEFAULT_TOL).unwrap();
                assert!(r.holds(), "{g:?} a={a}: {r:?}");
            }
        }
    }

    #[test]
    fn gram_by_hand_on_a_triangle_with_tail() {
        // K4 minus an edge: vertices 0 and 3 have degree 2, 1 and 2 degree 3
        let g = SimpleGraph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let lap = NbLaplacian::new(&g).unwrap();
        let gram = gram_l_from_formulas(&lap);
        let nb = lap.nb();
        let idx = |u: usize, v: usize| (0..nb.len()).find(|&i| nb.vertex(i).inp == u && nb.vertex(i).out == v).unwrap();
        assert_eq!(gram.get(idx(1, 0), idx(1, 0)), &q(3, 2));
        assert_eq!(gram.get(idx(0, 1), idx(0, 1)), &q(2, 1));
        assert_eq!(gram.get(idx(1, 0), idx(1, 3)), &q(1, 4));
        assert_eq!(gram.get(idx(0, 1), idx(0, 2)), &q(0, 1));
        // [2,1] -> [1,0] through vertex 1
        assert_eq!(gram.get(idx(2, 1), idx(1, 0)), &q(-1, 2));
    }
}
