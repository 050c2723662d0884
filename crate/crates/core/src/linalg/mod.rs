//! Exact rational linear algebra and spectra.

pub mod charpoly;
pub mod market;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod spectrum;

pub use charpoly::char_poly;
pub use matrix::{q, q_to_f64, RationalMatrix, Q};
pub use poly::Poly;
pub use spectrum::{
    bottleneck_distance, dense_eigenvalues, eigenvalues, eigenvectors, null_space, singular_values,
    Cluster, SingularSpectrum, Spectrum,
};

/// Exact coefficient-wise equality of characteristic polynomials.
pub fn spectra_equal_exact(p1: &Poly, p2: &Poly) -> bool {
    p1 == p2
}
