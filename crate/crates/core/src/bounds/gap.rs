//! The spectral gap from 1 and its bounds.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::linalg::Spectrum;
use crate::partite::circular_partite_analysis;
use crate::spectral::NbLaplacian;

/// `eps = min |1 - lambda|` over the spectrum.
pub fn epsilon(spec: &Spectrum) -> f64 {
    spec.clusters().iter().map(|c| (c.value - 1.0).norm()).fold(f64::INFINITY, f64::min)
}

/// `max |1 - lambda|` over the spectrum with one instance of `lambda = 0`
/// removed.
pub fn big_e(spec: &Spectrum) -> f64 {
    let mut dropped = false;
    let mut best = 0.0f64;
    for c in spec.clusters() {
        let mut mult = c.mult;
        if !dropped && c.value.norm() <= spec.tol() {
            dropped = true;
            mult -= 1;
        }
        if mult > 0 {
            best = best.max((c.value - 1.0).norm());
        }
    }
    best
}

/// `prod (deg v - 1)^(deg v - 1)` and the root `2M - k` of the upper bound
/// `prod^(-1 / (2M - k))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactBound {
    #[serde(serialize_with = "as_string")]
    pub product: BigInt,
    pub root: usize,
}

impl ExactBound {
    pub fn new(g: &SimpleGraph, k: usize) -> Result<Self> {
        let root = (2 * g.m())
            .checked_sub(k)
            .filter(|&r| r > 0)
            .ok_or_else(|| Error::Argument(format!("k = {k} leaves no root for 2M = {}", 2 * g.m())))?;
        let product = g
            .degrees()
            .iter()
            .filter(|&&d| d >= 1)
            .map(|&d| num_traits::pow(BigInt::from(d - 1), d - 1))
            .fold(BigInt::one(), |acc, x| acc * x);
        Ok(ExactBound { product, root })
    }

    pub fn value(&self) -> f64 {
        (-log_big(&self.product) / self.root as f64).exp()
    }

    /// `prod^(1/root) == base^(1/r)`, decided by `prod^r == base^root`.
    pub fn equals_root_of(&self, base: u64, r: usize) -> bool {
        num_traits::pow(self.product.clone(), r) == num_traits::pow(BigInt::from(base), self.root)
    }
}

fn as_string<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn log_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 60;
    let top: BigInt = x >> shift;
    num_traits::ToPrimitive::to_f64(&top).unwrap_or(1.0).ln() + shift as f64 * std::f64::consts::LN_2
}

/// The upper bound for a circularly k-partite graph.
pub fn theorem_upper_bound(g: &SimpleGraph, k: usize) -> Result<f64> {
    Ok(ExactBound::new(g, k)?.value())
}

/// `((Delta - 1)^(Delta - 1) 2^(2 Delta))^(-1 / (4 Delta - 1))`, the upper
/// bound for the wheel with `Delta + 1` vertices.
pub fn wheel_bound(delta: usize) -> f64 {
    let d = delta as f64;
    let log = (d - 1.0) * (d - 1.0).ln() + 2.0 * d * std::f64::consts::LN_2;
    (-log / (4.0 * d - 1.0)).exp()
}

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub max_k: usize,
    pub epsilon: f64,
    pub big_e: f64,
    /// `1 / (Delta - 1)`
    pub lower_bound: f64,
    pub upper_bound_thm: f64,
    /// `1 / (delta - 1)`
    pub conjecture_bound: f64,
    /// `(delta - 1)^(-(delta - 1) / Delta)`
    pub corollary_bound: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// `upper_bound_thm <= E`
    pub chain_holds: bool,
    /// `E = 1`, checked only when `max_k > 1`.
    pub big_e_is_one: Option<bool>,
    pub corollary_holds: bool,
    /// Informational.
    pub conjecture_holds: bool,
}

impl GapReport {
    /// Every proven relation; the conjecture is not included.
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds && self.chain_holds && self.big_e_is_one.unwrap_or(true) && self.corollary_holds
    }
}

pub fn gap_report(g: &SimpleGraph, tol: f64) -> Result<GapReport> {
    if g.has_cycle_component() {
        return Err(Error::Precondition("graphs with a cycle-graph component are excluded from the gap bounds".into()));
    }
    let lap = NbLaplacian::new(g)?;
    gap_report_for(&lap, tol)
}

pub fn gap_report_for(lap: &NbLaplacian, tol: f64) -> Result<GapReport> {
    let g = lap.graph();
    let max_k = circular_partite_analysis(g)?.max_k;
    let spec = lap.spectrum(tol)?;
    let (eps, e) = (epsilon(&spec), big_e(&spec));
    let (dl, dh) = (g.min_degree() as f64, g.max_degree() as f64);
    let lower = 1.0 / (dh - 1.0);
    let upper = theorem_upper_bound(g, max_k)?;
    let conj = 1.0 / (dl - 1.0);
    let cor = (dl - 1.0).powf(-(dl - 1.0) / dh);
    Ok(GapReport {
        n: g.n(),
        m: g.m(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        max_k,
        epsilon: eps,
        big_e: e,
        lower_bound: lower,
        upper_bound_thm: upper,
        conjecture_bound: conj,
        corollary_bound: cor,
        lower_holds: eps >= lower - tol,
        upper_holds: eps <= upper + tol,
        chain_holds: upper <= e + 2.0 * tol,
        big_e_is_one: (max_k > 1).then(|| (e - 1.0).abs() <= tol),
        corollary_holds: eps <= cor + tol,
        conjecture_holds: eps <= conj + tol,
    })
}
