//! Closed-form spectra of petal graphs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{q, Poly, Spectrum};

fn check(p: usize, k: usize) -> Result<()> {
    if p < 2 || k < 3 {
        return Err(Error::Argument(format!("petal spectrum needs p >= 2 and k >= 3, got p = {p}, k = {k}")));
    }
    Ok(())
}

/// The `k` solutions of `x^k = c` for real `c != 0`.
fn kth_roots(c: f64, k: usize) -> impl Iterator<Item = Complex64> {
    let r = c.abs().powf(1.0 / k as f64);
    let phase = if c < 0.0 { std::f64::consts::PI } else { 0.0 };
    (0..k).map(move |j| Complex64::from_polar(r, (phase + std::f64::consts::TAU * j as f64) / k as f64))
}

fn laplacian(values: impl Iterator<Item = Complex64>, tol: f64) -> Spectrum {
    let v: Vec<Complex64> = values.map(|mu| Complex64::new(1.0, 0.0) - mu).collect();
    Spectrum::from_values("nb_laplacian", &v, tol)
}

/// Characteristic polynomial of `D^-1 A` for `p` petals of length `k`:
/// `(x^k - 1) ((2p-1) x^k - 1)^p ((2p-1) x^k + 1)^(p-1)`, made monic.
pub fn petal_char_poly_w(p: usize, k: usize) -> Result<Poly> {
    check(p, k)?;
    let c = q(2 * p as i64 - 1, 1);
    let xk = Poly::monomial(q(1, 1), k);
    let plus = &xk.scale(&c) + &Poly::one();
    let minus = &xk.scale(&c) - &Poly::one();
    let mut out = Poly::x_pow_minus_one(k);
    for _ in 0..p {
        out = &out * &minus;
    }
    for _ in 0..p - 1 {
        out = &out * &plus;
    }
    Ok(out.monic())
}

/// Eigenvalues of `L` for the petal graph: `1 - w` over the k-th roots of
/// unity once, over the roots of `x^k = 1/(2p-1)` with multiplicity `p`, and
/// over the roots of `x^k = -1/(2p-1)` with multiplicity `p - 1`.
pub fn petal_spectrum(p: usize, k: usize, tol: f64) -> Result<Spectrum> {
    check(p, k)?;
    let c = 1.0 / (2 * p - 1) as f64;
    let unity = kth_roots(1.0, k);
    let inner = kth_roots(c, k).flat_map(|z| std::iter::repeat_n(z, p));
    let twisted = kth_roots(-c, k).flat_map(|z| std::iter::repeat_n(z, p - 1));
    Ok(laplacian(unity.chain(inner).chain(twisted), tol))
}

/// The family `1 - w_j` and `1 - w_j / (2p-1)^(1/k)`, the second one
/// repeated `2p - 1` times to fill dimension `2pk`.
pub fn petal_spectrum_as_stated(p: usize, k: usize, tol: f64) -> Result<Spectrum> {
    check(p, k)?;
    let c = 1.0 / (2 * p - 1) as f64;
    let unity = kth_roots(1.0, k);
    let inner = kth_roots(c, k).flat_map(|z| std::iter::repeat_n(z, 2 * p - 1));
    Ok(laplacian(unity.chain(inner), tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::linalg::{bottleneck_distance, dense_eigenvalues};
    use crate::spectral::NbLaplacian;
    use crate::DEFAULT_TOL;

    fn lap(p: usize, k: usize) -> NbLaplacian {
        NbLaplacian::new(&Family::Petal(p, k).build().unwrap()).unwrap()
    }

    #[test]
    fn char_poly_is_exact() {
        for (p, k) in [(2, 3), (2, 4), (3, 3), (2, 5), (3, 4)] {
            assert_eq!(&petal_char_poly_w(p, k).unwrap(), lap(p, k).char_poly_w(), "p={p} k={k}");
        }
    }

    #[test]
    fn matches_dense_eigensolve() {
        for p in 2..=3 {
            for k in 3..=5 {
                let closed = petal_spectrum(p, k, DEFAULT_TOL).unwrap();
                assert_eq!(closed.dim(), 2 * p * k);
                let dense = dense_eigenvalues(lap(p, k).l()).unwrap();
                assert!(bottleneck_distance(&closed.values(), &dense) < 1e-6, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn moduli_classes() {
        let s = petal_spectrum(3, 4, DEFAULT_TOL).unwrap();
        let r = 5f64.powf(-0.25);
        for z in s.values() {
            let m = (Complex64::new(1.0, 0.0) - z).norm();
            assert!((m - 1.0).abs() < 1e-12 || (m - r).abs() < 1e-12);
        }
    }

    #[test]
    fn stated_family_differs() {
        let stated = petal_spectrum_as_stated(2, 3, DEFAULT_TOL).unwrap();
        assert_eq!(stated.dim(), 12);
        let l = lap(2, 3);
        let exact = l.spectrum(DEFAULT_TOL).unwrap();
        assert!(bottleneck_distance(&stated.values(), &exact.values()) > 0.1);
        // the listed values are all eigenvalues, only the multiset is off
        for c in stated.clusters() {
            assert!(exact.contains(c.value, 1e-9));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(petal_spectrum(1, 3, DEFAULT_TOL).is_err());
        assert!(petal_spectrum(2, 2, DEFAULT_TOL).is_err());
    }
}
