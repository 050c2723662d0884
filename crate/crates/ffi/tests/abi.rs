use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::process::Command;
use std::ptr;

use nbspectra::*;

fn family(spec: &str) -> *mut NbsGraph {
    let spec = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { nbs_graph_from_family(spec.as_ptr(), &mut g) }, NbsStatus::Ok);
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(nbs_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn k4_from_graph6() {
    let text = CString::new("C~").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(nbs_graph_from_graph6(text.as_ptr(), &mut g), NbsStatus::Ok);
        let (mut n, mut m, mut v, mut a) = (0, 0, 0, 0);
        assert_eq!(nbs_graph_size(g, &mut n, &mut m), NbsStatus::Ok);
        assert_eq!(nbs_nb_size(g, &mut v, &mut a), NbsStatus::Ok);
        assert_eq!((n, m, v, a), (4, 6, 12, 24));
        let mut s: *mut c_char = ptr::null_mut();
        assert_eq!(nbs_graph_to_graph6(g, &mut s), NbsStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "C~");
        nbs_string_free(s);
        nbs_graph_free(g);
    }
}

#[test]
fn cycle_four_spectrum() {
    let g = family("cycle:4");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(nbs_spectrum_new(g, NbsOperator::NbLaplacian, 1e-8, &mut s), NbsStatus::Ok);
        assert_eq!(nbs_spectrum_len(s), 4);
        let mut got = Vec::new();
        for i in 0..4 {
            let (mut re, mut im, mut mult) = (0.0, 0.0, 0);
            assert_eq!(nbs_spectrum_get(s, i, &mut re, &mut im, &mut mult), NbsStatus::Ok);
            got.push((re, im, mult));
        }
        let want = [(0.0, 0.0, 2), (1.0, -1.0, 2), (1.0, 1.0, 2), (2.0, 0.0, 2)];
        for (a, b) in got.iter().zip(want) {
            assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12 && a.2 == b.2);
        }
        let (mut re, mut im, mut mult) = (0.0, 0.0, 0);
        assert_eq!(nbs_spectrum_get(s, 4, &mut re, &mut im, &mut mult), NbsStatus::Argument);
        nbs_spectrum_free(s);
        nbs_graph_free(g);
    }
}

#[test]
fn petal_gap_and_partite() {
    let g = family("petal:2,3");
    unsafe {
        let mut eps = 0.0;
        assert_eq!(nbs_spectral_gap(g, 1e-8, &mut eps), NbsStatus::Ok);
        assert!((eps - 3f64.powf(-1.0 / 3.0)).abs() < 1e-10);
        let mut k = 0;
        assert_eq!(nbs_partite_max_k(g, &mut k), NbsStatus::Ok);
        assert_eq!(k, 3);
        let mut passed: c_int = 0;
        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(nbs_verify(g, 1e-8, &mut passed, &mut json), NbsStatus::Ok);
        assert_eq!(passed, 1);
        let report: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(report["n"], 5);
        nbs_string_free(json);
        nbs_graph_free(g);
    }
}

#[test]
fn independence_of_k4() {
    let g = family("complete:4");
    let (mut a, mut s) = (0, 0);
    unsafe {
        assert_eq!(nbs_independence(g, &mut a, &mut s), NbsStatus::Ok);
        nbs_graph_free(g);
    }
    assert_eq!((a, s), (4, 4));
}

#[test]
fn errors_and_nulls() {
    let mut g = ptr::null_mut();
    unsafe {
        let bad = CString::new("banana:3").unwrap();
        assert_eq!(nbs_graph_from_family(bad.as_ptr(), &mut g), NbsStatus::Argument);
        assert!(last_error().contains("banana"));
        assert_eq!(nbs_graph_from_graph6(ptr::null(), &mut g), NbsStatus::NullPointer);
        assert!(last_error().contains("text"));
        let loops = [0usize, 0];
        assert_eq!(nbs_graph_from_edges(2, loops.as_ptr(), 1, &mut g), NbsStatus::Argument);
        let path = [0usize, 1, 1, 2];
        assert_eq!(nbs_graph_from_edges(3, path.as_ptr(), 2, &mut g), NbsStatus::Ok);
        let mut eps = 0.0;
        assert_eq!(nbs_spectral_gap(g, 1e-8, &mut eps), NbsStatus::Precondition);
        let mut s = ptr::null_mut();
        assert_eq!(nbs_spectrum_new(g, NbsOperator::Adjacency, 0.5, &mut s), NbsStatus::Argument);
        nbs_graph_free(g);
        let big = family("complete:9");
        let (mut a, mut b) = (0, 0);
        assert_eq!(nbs_independence(big, &mut a, &mut b), NbsStatus::Capability);
        nbs_graph_free(big);
        nbs_graph_free(ptr::null_mut());
        nbs_spectrum_free(ptr::null_mut());
        nbs_string_free(ptr::null_mut());
        assert_eq!(nbs_spectrum_len(ptr::null()), 0);
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "nbspectra.h"

int main(void) {
    NbsGraph *g = NULL;
    if (nbs_graph_from_family("complete:4", &g) != NBS_STATUS_OK) return 10;
    size_t v = 0, a = 0;
    if (nbs_nb_size(g, &v, &a) != NBS_STATUS_OK) return 11;
    double eps = 0.0;
    if (nbs_spectral_gap(g, 1e-8, &eps) != NBS_STATUS_OK) return 12;
    NbsSpectrum *s = NULL;
    if (nbs_spectrum_new(g, NBS_OPERATOR_NB_LAPLACIAN, 1e-8, &s) != NBS_STATUS_OK) return 13;
    printf("%zu %zu %.6f %zu\n", v, a, eps, nbs_spectrum_len(s));
    nbs_spectrum_free(s);
    nbs_graph_free(g);
    if (nbs_graph_from_graph6("C", &g) == NBS_STATUS_OK) return 14;
    printf("%s\n", nbs_last_error() ? "error-set" : "error-missing");
    return 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let Ok(exe) = std::env::current_exe() else { return };
    let target = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = target.join("libnbspectra.so");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or shared library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.path().join("main");
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I", include])
        .arg(&src)
        .arg("-L")
        .arg(&target)
        .args(["-lnbspectra", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).env("LD_LIBRARY_PATH", &target).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "12 24 0.500000 5\nerror-set\n");
}
