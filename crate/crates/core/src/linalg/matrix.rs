use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Q::one() } else { Q::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| Q::from_integer(entries[i * cols + j].into()))
    }

    pub fn diagonal(values: &[Q]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i].clone() } else { Q::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Q) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Q) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `c * Id - self`
    pub fn shifted_neg(&self, c: &Q) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            let x = -self.get(i, j);
            if i == j {
                x + c
            } else {
                x
            }
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums(&self) -> Vec<Q> {
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(Q::zero(), |acc, x| acc + x))
            .collect()
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
                continue;
            };
            for k in 0..cols {
                a.swap(rank * cols + k, p * cols + k);
            }
            let pivot = a[rank * cols + c].clone();
            for r in rank + 1..rows {
                if a[r * cols + c].is_zero() {
                    continue;
                }
                let f = &a[r * cols + c] / &pivot;
                for k in c..cols {
                    let t = &f * &a[rank * cols + k];
                    a[r * cols + k] -= t;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| q_to_f64(self.get(i, j)))
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| {
            Complex64::new(q_to_f64(self.get(i, j)), 0.0)
        })
    }

    /// Short stable hash of the entries, used to identify matrices in errors.
    pub fn fingerprint(&self) -> String {
        let mut h = DefaultHasher::new();
        (self.rows, self.cols).hash(&mut h);
        for x in &self.data {
            x.numer().hash(&mut h);
            x.denom().hash(&mut h);
        }
        format!("{}x{}:{:016x}", self.rows, self.cols, h.finish())
    }
}

impl<'a> Mul<&'a RationalMatrix> for &'a RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &'a RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a RationalMatrix> for &'a RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &'a RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RationalMatrix> for &'a RationalMatrix {
    type Output = RationalMatrix;

    fn sub(self, rhs: &'a RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = RationalMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = a.transpose();
        let g = &a * &b;
        assert_eq!(g, RationalMatrix::from_i64(2, 2, &[14, 32, 32, 77]));
        assert!(g.is_symmetric());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]).rank(), 2);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn shift_and_sums() {
        let a = RationalMatrix::from_i64(2, 2, &[1, 2, 3, 4]);
        let s = a.shifted_neg(&q(1, 2));
        assert_eq!(s.get(0, 0), &q(-1, 2));
        assert_eq!(s.get(0, 1), &q(-2, 1));
        assert_eq!(a.row_sums(), vec![q(3, 1), q(7, 1)]);
        assert_eq!(a.trace(), q(5, 1));
    }

    #[test]
    fn fingerprint_distinguishes() {
        let a = RationalMatrix::identity(3);
        let b = RationalMatrix::from_fn(3, 3, |i, j| if i == j { q(1, 2) } else { Q::zero() });
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint(), RationalMatrix::identity(3).fingerprint());
    }
}
