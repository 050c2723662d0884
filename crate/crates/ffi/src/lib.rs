//! C ABI over `nbspectra-core`.
//!
//! Graphs and spectra are opaque handles created by `nbs_*_new`/`nbs_graph_*`
//! constructors and released with the matching `*_free`. Every fallible call
//! returns an [`NbsStatus`]; on failure the message is available from
//! [`nbs_last_error`] until the next failing call on the same thread.
//! Strings returned through `char **` belong to the caller and are released
//! with [`nbs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nbspectra_core::bounds::{epsilon, independence_numbers};
use nbspectra_core::cospectral::Operator;
use nbspectra_core::graph::Family;
use nbspectra_core::linalg::{char_poly, Spectrum};
use nbspectra_core::partite::circular_partite_analysis;
use nbspectra_core::spectral::NbLaplacian;
use nbspectra_core::{graph6, verify, Error, NbGraph, SimpleGraph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NbsStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Argument = 3,
    Capability = 4,
    Precondition = 5,
    Numeric = 6,
    Io = 7,
    /// A panic was caught at the boundary.
    Internal = 8,
}

/// Operator selector for [`nbs_spectrum_new`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NbsOperator {
    Adjacency = 0,
    NormalizedLaplacian = 1,
    NbMatrix = 2,
    NbLaplacian = 3,
}

impl From<NbsOperator> for Operator {
    fn from(op: NbsOperator) -> Self {
        match op {
            NbsOperator::Adjacency => Operator::Adjacency,
            NbsOperator::NormalizedLaplacian => Operator::NormalizedLaplacian,
            NbsOperator::NbMatrix => Operator::NbMatrix,
            NbsOperator::NbLaplacian => Operator::NbLaplacian,
        }
    }
}

/// Opaque simple graph.
pub struct NbsGraph(SimpleGraph);

/// Opaque clustered spectrum.
pub struct NbsSpectrum(Spectrum);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> NbsStatus {
    match e {
        Error::Parse { .. } => NbsStatus::Parse,
        Error::Argument(_) | Error::Json(_) => NbsStatus::Argument,
        Error::Capability(_) => NbsStatus::Capability,
        Error::Precondition(_) | Error::Reconstruction(_) => NbsStatus::Precondition,
        Error::Numeric { .. } => NbsStatus::Numeric,
        Error::Io(_) => NbsStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

/// Runs `f`, mapping errors and panics onto a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NbsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NbsStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            NbsStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            NbsStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Core(Error::Argument(format!("{what} is not valid UTF-8"))))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message of the last failing call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nbs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nbs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nbs_graph_from_graph6(text: *const c_char, out: *mut *mut NbsGraph) -> NbsStatus {
    guard(|| {
        let s = self::text(text, "text")?;
        let out = out_ptr(out, "out")?;
        *out = Box::into_raw(Box::new(NbsGraph(graph6::parse(s.trim())?)));
        Ok(())
    })
}

/// Family spec such as `petal:2,3`, `cycle:5`, `complete:4`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nbs_graph_from_family(spec: *const c_char, out: *mut *mut NbsGraph) -> NbsStatus {
    guard(|| {
        let family: Family = text(spec, "spec")?.parse()?;
        let out = out_ptr(out, "out")?;
        *out = Box::into_raw(Box::new(NbsGraph(family.build()?)));
        Ok(())
    })
}

/// `edges` holds `m` pairs `u0 v0 u1 v1 ...` of 0-based vertex ids.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (or be NULL when `m == 0`)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nbs_graph_from_edges(n: usize, edges: *const usize, m: usize, out: *mut *mut NbsGraph) -> NbsStatus {
    guard(|| {
        let flat: &[usize] = if m == 0 {
            &[]
        } else {
            if edges.is_null() {
                return Err(Fail::Null("edges"));
            }
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let out = out_ptr(out, "out")?;
        let g = SimpleGraph::new(n, flat.chunks_exact(2).map(|c| (c[0], c[1])))?;
        *out = Box::into_raw(Box::new(NbsGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn nbs_graph_free(g: *mut NbsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex and edge counts.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn nbs_graph_size(g: *const NbsGraph, n: *mut usize, m: *mut usize) -> NbsStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        *out_ptr(n, "n")? = g.n();
        *out_ptr(m, "m")? = g.m();
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid; release `*out` with [`nbs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn nbs_graph_to_graph6(g: *const NbsGraph, out: *mut *mut c_char) -> NbsStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        *out_ptr(out, "out")? = c_string(graph6::encode(g));
        Ok(())
    })
}

/// Vertex and arc counts of the NB graph.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn nbs_nb_size(g: *const NbsGraph, vertices: *mut usize, arcs: *mut usize) -> NbsStatus {
    guard(|| {
        let nb = NbGraph::new(&deref(g, "graph")?.0)?;
        *out_ptr(vertices, "vertices")? = nb.len();
        *out_ptr(arcs, "arcs")? = nb.arc_count();
        Ok(())
    })
}

/// NB graph as JSON `{"vertices": [[v,w],...], "arcs": [[i,j],...]}`.
///
/// # Safety
/// Pointers must be valid; release `*out` with [`nbs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn nbs_nb_json(g: *const NbsGraph, out: *mut *mut c_char) -> NbsStatus {
    guard(|| {
        let nb = NbGraph::new(&deref(g, "graph")?.0)?;
        *out_ptr(out, "out")? = c_string(nb.to_json().to_string());
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn nbs_spectrum_new(g: *const NbsGraph, op: NbsOperator, tol: f64, out: *mut *mut NbsSpectrum) -> NbsStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let out = out_ptr(out, "out")?;
        if !(tol > 0.0 && tol <= 1e-2) {
            return Err(Error::Argument(format!("tol must lie in (0, 1e-2], got {tol}")).into());
        }
        let op = Operator::from(op);
        let spec = match op {
            Operator::NbLaplacian => NbLaplacian::new(g)?.spectrum(tol)?,
            _ => Spectrum::from_char_poly(op.name(), &char_poly(&op.matrix(g)?), tol)?,
        };
        *out = Box::into_raw(Box::new(NbsSpectrum(spec)));
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn nbs_spectrum_free(s: *mut NbsSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of distinct eigenvalue clusters; 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn nbs_spectrum_len(s: *const NbsSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.0.clusters().len())
}

/// Cluster `i`, ordered by real then imaginary part.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn nbs_spectrum_get(s: *const NbsSpectrum, i: usize, re: *mut f64, im: *mut f64, mult: *mut usize) -> NbsStatus {
    guard(|| {
        let clusters = deref(s, "spectrum")?.0.clusters();
        let c = clusters
            .get(i)
            .ok_or_else(|| Error::Argument(format!("index {i} out of range for {} clusters", clusters.len())))?;
        *out_ptr(re, "re")? = c.value.re;
        *out_ptr(im, "im")? = c.value.im;
        *out_ptr(mult, "mult")? = c.mult;
        Ok(())
    })
}

/// `min |1 - lambda|` over the NB Laplacian spectrum.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn nbs_spectral_gap(g: *const NbsGraph, tol: f64, out: *mut f64) -> NbsStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let out = out_ptr(out, "out")?;
        *out = epsilon(&NbLaplacian::new(g)?.spectrum(tol)?);
        Ok(())
    })
}

/// Largest `k` admitting a circular k-partition.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn nbs_partite_max_k(g: *const NbsGraph, out: *mut usize) -> NbsStatus {
    guard(|| {
        let report = circular_partite_analysis(&deref(g, "graph")?.0)?;
        *out_ptr(out, "out")? = report.max_k;
        Ok(())
    })
}

/// Out- and strong out-independence numbers of the NB graph.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn nbs_independence(g: *const NbsGraph, alpha_out: *mut usize, alpha_s_out: *mut usize) -> NbsStatus {
    guard(|| {
        let r = independence_numbers(&NbGraph::new(&deref(g, "graph")?.0)?)?;
        *out_ptr(alpha_out, "alpha_out")? = r.alpha_out;
        *out_ptr(alpha_s_out, "alpha_s_out")? = r.alpha_s_out;
        Ok(())
    })
}

/// Runs the check suite; `*passed` is 1 iff no check failed. `json` may be
/// NULL, otherwise it receives the report.
///
/// # Safety
/// Pointers must be valid; release `*json` with [`nbs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn nbs_verify(g: *const NbsGraph, tol: f64, passed: *mut c_int, json: *mut *mut c_char) -> NbsStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let passed = out_ptr(passed, "passed")?;
        let report = verify::verify(g, tol)?;
        *passed = report.passed() as c_int;
        if let Some(json) = json.as_mut() {
            let value = nbspectra_core::report::rounded(&report);
            *json = c_string(value.to_string());
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_cover_every_error() {
        assert_eq!(status_of(&Error::parse(0, "x")), NbsStatus::Parse);
        assert_eq!(status_of(&Error::Capability("x".into())), NbsStatus::Capability);
        assert_eq!(status_of(&Error::Precondition("x".into())), NbsStatus::Precondition);
    }

    #[test]
    fn panics_become_internal() {
        assert_eq!(guard(|| panic!("boom")), NbsStatus::Internal);
        let msg = unsafe { CStr::from_ptr(nbs_last_error()) }.to_str().unwrap();
        assert_eq!(msg, "internal error: boom");
    }
}
