//! Spectral gap bounds, petal spectra, cycle signatures, independence
//! numbers and inertia-type bounds.

mod cycles;
mod gap;
mod independence;
mod inertia;
mod petal;

pub use cycles::{
    chordless_cycles, cycle_signature_check, cycle_signature_check_for, CycleSignature, CycleSignatureReport,
    MultiplicityCheck, SignatureKind, CYCLE_CAP,
};
pub use gap::{big_e, epsilon, gap_report, gap_report_for, theorem_upper_bound, wheel_bound, ExactBound, GapReport};
pub use independence::{
    conflicts, independence_numbers, maximum_independent_set, IndependenceReport, INDEPENDENCE_CAP,
};
pub use inertia::{
    gram_l_from_formulas, gram_w_from_formulas, inertia_bounds_check, inertia_bounds_check_for, InertiaCheck,
    InertiaReport,
};
pub use petal::{petal_char_poly_w, petal_spectrum, petal_spectrum_as_stated};

use serde::Serialize;

use crate::error::Result;
use crate::graph::SimpleGraph;
use crate::linalg::q;
use crate::report::sig;
use crate::spectral::NbLaplacian;

/// One row of the per-graph summary.
#[derive(Clone, Debug, Serialize)]
pub struct SummaryRow {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub max_k: usize,
    pub epsilon: String,
    pub big_e: String,
    pub lower_bound: String,
    pub upper_bound: String,
    pub conjecture_bound: String,
    pub corollary_bound: String,
    pub alpha_out: usize,
    pub alpha_s_out: usize,
    pub gap_bounds: &'static str,
    pub inertia: &'static str,
    pub conjecture: &'static str,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Summary for a graph with min degree at least 2 and no cycle component.
/// The inertia verdict covers `a = 0` and `a = 1`.
pub fn summary_row(g: &SimpleGraph, tol: f64) -> Result<SummaryRow> {
    let lap = NbLaplacian::new(g)?;
    let gap = gap_report(g, tol)?;
    let i0 = inertia_bounds_check_for(&lap, &q(0, 1), tol)?;
    let i1 = inertia_bounds_check_for(&lap, &q(1, 1), tol)?;
    Ok(SummaryRow {
        graph6: crate::graph6::encode(g),
        n: gap.n,
        m: gap.m,
        min_degree: gap.min_degree,
        max_degree: gap.max_degree,
        max_k: gap.max_k,
        epsilon: sig(gap.epsilon),
        big_e: sig(gap.big_e),
        lower_bound: sig(gap.lower_bound),
        upper_bound: sig(gap.upper_bound_thm),
        conjecture_bound: sig(gap.conjecture_bound),
        corollary_bound: sig(gap.corollary_bound),
        alpha_out: i1.independence.alpha_out,
        alpha_s_out: i1.independence.alpha_s_out,
        gap_bounds: verdict(gap.holds()),
        inertia: verdict(i0.holds() && i1.holds()),
        conjecture: verdict(gap.conjecture_holds),
    })
}

pub fn summary_csv(rows: &[SummaryRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| crate::Error::Io(std::io::Error::other(e)))?;
    }
    let bytes = w.into_inner().map_err(|e| crate::Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
