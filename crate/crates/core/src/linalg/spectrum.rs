use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

use super::charpoly::char_poly;
use super::matrix::RationalMatrix;
use super::poly::Poly;
use super::roots::squarefree_roots;

/// Single-linkage radius used to group numerically equal eigenvalues.
pub const CLUSTER_RADIUS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cluster {
    pub value: Complex64,
    pub mult: usize,
}

impl Serialize for Cluster {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Cluster", 3)?;
        st.serialize_field("re", &self.value.re)?;
        st.serialize_field("im", &self.value.im)?;
        st.serialize_field("mult", &self.mult)?;
        st.end()
    }
}

/// Multiset of complex eigenvalues with provenance.
#[derive(Clone, Debug)]
pub struct Spectrum {
    operator: String,
    dim: usize,
    tol: f64,
    clusters: Vec<Cluster>,
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl Spectrum {
    /// Groups `values` by single linkage at [`CLUSTER_RADIUS`].
    pub fn from_values(operator: &str, values: &[Complex64], tol: f64) -> Self {
        Self::from_weighted(operator, values.iter().map(|&z| (z, 1)).collect(), tol)
    }

    fn from_weighted(operator: &str, mut items: Vec<(Complex64, usize)>, tol: f64) -> Self {
        items.sort_by(|a, b| cmp_complex(&a.0, &b.0));
        let n = items.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if items[j].0.re - items[i].0.re > CLUSTER_RADIUS {
                    break;
                }
                if (items[i].0 - items[j].0).norm() <= CLUSTER_RADIUS {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut clusters: Vec<Cluster> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        let mut sums: Vec<(Complex64, usize)> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = clusters.len();
                clusters.push(Cluster { value: items[i].0, mult: 0 });
                sums.push((Complex64::new(0.0, 0.0), 0));
            }
            let c = slot[r];
            clusters[c].mult += items[i].1;
            sums[c].0 += items[i].0 * items[i].1 as f64;
            sums[c].1 += 1;
        }
        for (c, (s, members)) in clusters.iter_mut().zip(&sums) {
            if *members > 1 {
                c.value = s / c.mult as f64;
            }
        }
        clusters.sort_by(|a, b| cmp_complex(&a.value, &b.value));
        let dim = clusters.iter().map(|c| c.mult).sum();
        Spectrum { operator: operator.to_string(), dim, tol, clusters }
    }

    /// Eigenvalues from an exact characteristic polynomial: zero multiplicity
    /// and square-free structure are exact, root positions are polished.
    pub fn from_char_poly(operator: &str, p: &Poly, tol: f64) -> Result<Self> {
        let (zeros, rest) = p.strip_zero_roots();
        let mut items = Vec::new();
        if zeros > 0 {
            items.push((Complex64::new(0.0, 0.0), zeros));
        }
        for (factor, mult) in rest.squarefree() {
            for z in squarefree_roots(&factor)? {
                items.push((z, mult));
            }
        }
        Ok(Self::from_weighted(operator, items, tol))
    }

    pub fn operator(&self) -> &str {
        &self.operator
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    /// Full multiset, sorted by real then imaginary part.
    pub fn values(&self) -> Vec<Complex64> {
        self.clusters
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.value, c.mult))
            .collect()
    }

    pub fn sum(&self) -> Complex64 {
        self.clusters.iter().map(|c| c.value * c.mult as f64).sum()
    }

    /// Multiplicity of the cluster within `tol` of `z` (0 if none).
    pub fn multiplicity_near(&self, z: Complex64, tol: f64) -> usize {
        self.clusters
            .iter()
            .filter(|c| (c.value - z).norm() <= tol)
            .map(|c| c.mult)
            .sum()
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.multiplicity_near(z, tol) > 0
    }

    /// True iff every value has its conjugate within `tol` at equal multiplicity.
    pub fn is_conjugation_symmetric(&self, tol: f64) -> bool {
        self.clusters
            .iter()
            .all(|c| self.multiplicity_near(c.value.conj(), tol) == self.multiplicity_near(c.value, tol))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "operator": self.operator,
            "dim": self.dim,
            "tol": self.tol,
            "values": self.clusters,
        })
    }
}

/// Eigenvalues of a rational matrix, guided by its exact characteristic polynomial.
pub fn eigenvalues(m: &RationalMatrix, tol: f64) -> Result<Spectrum> {
    Spectrum::from_char_poly("matrix", &char_poly(m), tol)
}

/// Plain floating-point eigenvalues by real Schur decomposition.
pub fn dense_eigenvalues(m: &RationalMatrix) -> Result<Vec<Complex64>> {
    dense_eigenvalues_f64(m.to_f64()).ok_or_else(|| Error::Numeric {
        message: "Schur iteration did not converge".into(),
        fingerprint: m.fingerprint(),
    })
}

/// Falls back to a looser deflation threshold, then to a fixed orthogonal
/// similarity, when the QR iteration stalls on highly structured input.
pub(crate) fn dense_eigenvalues_f64(m: DMatrix<f64>) -> Option<Vec<Complex64>> {
    let n = m.nrows();
    let attempt = |a: DMatrix<f64>, eps: f64| Schur::try_new(a, eps, 100_000);
    let schur = attempt(m.clone(), f64::EPSILON)
        .or_else(|| attempt(m.clone(), 1e-14))
        .or_else(|| {
            let filler = DMatrix::from_fn(n, n, |i, j| ((7 * i + 13 * j + 1) as f64).sin());
            let q = filler.qr().q();
            attempt(q.transpose() * &m * &q, 1e-14)
        })?;
    let mut v: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    v.sort_by(cmp_complex);
    Some(v)
}

/// Ascending singular values `s_1 <= ... <= s_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularSpectrum {
    pub values: Vec<f64>,
}

impl SingularSpectrum {
    /// 1-based access, `s(1)` is the smallest.
    pub fn s(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn count_at_most(&self, t: f64, tol: f64) -> usize {
        self.values.iter().filter(|&&s| s <= t + tol).count()
    }

    pub fn count_at_least(&self, t: f64, tol: f64) -> usize {
        self.values.iter().filter(|&&s| s >= t - tol).count()
    }
}

/// Singular values as square roots of the eigenvalues of the exact Gram
/// matrix `m^T m`, located through its exact characteristic polynomial.
pub fn singular_values(m: &RationalMatrix, tol: f64) -> Result<SingularSpectrum> {
    let gram = &m.transpose() * m;
    let spec = Spectrum::from_char_poly("gram", &char_poly(&gram), tol)?;
    let mut values = Vec::with_capacity(spec.dim());
    for c in spec.clusters() {
        if c.value.re < -tol || c.value.im.abs() > tol {
            return Err(Error::Numeric {
                message: format!("Gram eigenvalue {} is not a non-negative real", c.value),
                fingerprint: m.fingerprint(),
            });
        }
        let s = c.value.re.max(0.0).sqrt();
        values.extend(std::iter::repeat_n(s, c.mult));
    }
    values.sort_by(f64::total_cmp);
    Ok(SingularSpectrum { values })
}

/// Orthonormal basis of the numerical null space of `a` (singular values at
/// most `threshold * max(1, |a|)`). Returns at least one vector.
pub fn null_space(a: &DMatrix<Complex64>, threshold: f64) -> Vec<DVector<Complex64>> {
    let n = a.ncols();
    // pad to square so that the SVD returns a full right basis
    let sq = if a.nrows() >= n {
        a.clone()
    } else {
        let mut s = DMatrix::zeros(n, n);
        s.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        s
    };
    let svd = sq.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let scale = svd.singular_values.iter().copied().fold(1.0, f64::max);
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let mut out: Vec<DVector<Complex64>> = idx
        .iter()
        .filter(|&&i| svd.singular_values[i] <= threshold * scale)
        .map(|&i| v_t.row(i).adjoint())
        .collect();
    if out.is_empty() {
        out.push(v_t.row(idx[0]).adjoint());
    }
    out
}

/// Eigenvectors for `lambda`: a basis of the numerical null space of `m - lambda Id`.
pub fn eigenvectors(m: &RationalMatrix, lambda: Complex64) -> Vec<DVector<Complex64>> {
    let n = m.rows();
    let a = m.to_complex() - DMatrix::<Complex64>::identity(n, n) * lambda;
    null_space(&a, 1e-7)
}

/// Bottleneck distance between two equal-size multisets: the smallest `r`
/// for which a perfect matching with all pairs within `r` exists.
pub fn bottleneck_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    let dist: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let mut cands: Vec<f64> = dist.iter().flatten().copied().collect();
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    let feasible = |r: f64| -> bool {
        let mut match_b = vec![usize::MAX; n];
        fn augment(u: usize, r: f64, d: &[Vec<f64>], seen: &mut [bool], mb: &mut [usize]) -> bool {
            for v in 0..d.len() {
                if d[u][v] <= r && !seen[v] {
                    seen[v] = true;
                    if mb[v] == usize::MAX || augment(mb[v], r, d, seen, mb) {
                        mb[v] = u;
                        return true;
                    }
                }
            }
            false
        }
        (0..n).all(|u| augment(u, r, &dist, &mut vec![false; n], &mut match_b))
    };
    if n == 0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::q;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn defective_eigenvalue_is_accurate() {
        // Jordan block of size 3 at 1/2 plus a simple eigenvalue 2
        let m = RationalMatrix::from_fn(4, 4, |i, j| match (i, j) {
            (0, 0) | (1, 1) | (2, 2) => q(1, 2),
            (0, 1) | (1, 2) => q(1, 1),
            (3, 3) => q(2, 1),
            _ => q(0, 1),
        });
        let s = eigenvalues(&m, 1e-8).unwrap();
        assert_eq!(s.clusters().len(), 2);
        assert_eq!(s.clusters()[0].mult, 3);
        assert!((s.clusters()[0].value - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn dense_agrees_with_exact_track() {
        let m = RationalMatrix::from_i64(3, 3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]);
        let exact = eigenvalues(&m, 1e-8).unwrap().values();
        let dense = dense_eigenvalues(&m).unwrap();
        assert!(bottleneck_distance(&exact, &dense) < 1e-12);
    }

    #[test]
    fn singular_values_identity_and_transpose() {
        let s = singular_values(&RationalMatrix::identity(3), 1e-8).unwrap();
        assert_eq!(s.values, vec![1.0, 1.0, 1.0]);
        let m = RationalMatrix::from_i64(3, 3, &[1, 2, 0, 0, 1, 3, 0, 0, 0]);
        let a = singular_values(&m, 1e-8).unwrap();
        let b = singular_values(&m.transpose(), 1e-8).unwrap();
        assert_eq!(a.s(1), 0.0);
        for (x, y) in a.values.iter().zip(&b.values) {
            assert!((x - y).abs() < 1e-12);
        }
        let svd = m.to_f64().svd(false, false);
        let mut dense: Vec<f64> = svd.singular_values.iter().copied().collect();
        dense.sort_by(f64::total_cmp);
        for (x, y) in a.values.iter().zip(&dense) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn clustering_merges_close_values() {
        let s = Spectrum::from_values("t", &[c(1.0, 0.0), c(1.0 + 1e-9, 0.0), c(2.0, 0.0)], 1e-8);
        assert_eq!(s.clusters().len(), 2);
        assert_eq!(s.clusters()[0].mult, 2);
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn bottleneck_matching() {
        let a = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)];
        let b = [c(2.1, 0.0), c(0.05, 0.0), c(1.0, 0.0)];
        assert!((bottleneck_distance(&a, &b) - 0.1).abs() < 1e-12);
        assert_eq!(bottleneck_distance(&a, &b[..2]), f64::INFINITY);
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = RationalMatrix::from_i64(3, 3, &[1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let basis = eigenvectors(&m, c(0.0, 0.0));
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!((m.to_complex() * v).norm() < 1e-12);
        }
        let top = eigenvectors(&m, c(3.0, 0.0));
        assert_eq!(top.len(), 1);
    }

    #[test]
    fn json_shape() {
        let s = Spectrum::from_values("P", &[c(1.0, 0.0), c(-1.0, 0.0)], 1e-8);
        let j = s.to_json();
        assert_eq!(j["values"][0]["re"], -1.0);
        assert_eq!(j["values"][0]["mult"], 1);
    }
}
