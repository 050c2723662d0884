use num_traits::{One, Zero};

use super::matrix::{RationalMatrix, Q};
use super::poly::Poly;

/// Exact `det(x Id - m)`: similarity reduction to upper Hessenberg form over
/// the rationals followed by the Hessenberg determinant recurrence.
pub fn char_poly(m: &RationalMatrix) -> Poly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut h: Vec<Vec<Q>> = (0..n).map(|i| m.row(i).to_vec()).collect();

    for c in 0..n.saturating_sub(2) {
        let p = c + 1;
        let Some(i) = (p..n).find(|&i| !h[i][c].is_zero()) else {
            continue;
        };
        if i != p {
            h.swap(i, p);
            for row in h.iter_mut() {
                row.swap(i, p);
            }
        }
        let pivot = h[p][c].clone();
        for j in p + 1..n {
            if h[j][c].is_zero() {
                continue;
            }
            let u = &h[j][c] / &pivot;
            let (top, bottom) = h.split_at_mut(j);
            let rp = &top[p];
            for (x, y) in bottom[0].iter_mut().zip(rp) {
                if !y.is_zero() {
                    *x -= &u * y;
                }
            }
            for row in h.iter_mut() {
                if !row[j].is_zero() {
                    let t = &u * &row[j];
                    row[p] += t;
                }
            }
        }
    }

    let mut polys: Vec<Poly> = vec![Poly::one()];
    for mm in 1..=n {
        let k = mm - 1;
        let lin = Poly::linear_root(&h[k][k]);
        let mut next = &lin * &polys[mm - 1];
        let mut t = Q::one();
        for i in 1..mm {
            t *= &h[k - i + 1][k - i];
            if t.is_zero() {
                break;
            }
            let c = &h[k - i][k];
            if c.is_zero() {
                continue;
            }
            next = &next - &polys[mm - i - 1].scale(&(c * &t));
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::linalg::matrix::q;
    use proptest::prelude::*;

    /// Laplace expansion of det(x Id - m) along the first row.
    fn cofactor_char_poly(m: &RationalMatrix) -> Poly {
        let n = m.rows();
        let entry = |i: usize, j: usize| -> Poly {
            let c = Poly::constant(-m.get(i, j).clone());
            if i == j {
                &c + &Poly::x()
            } else {
                c
            }
        };
        fn det(rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> Poly) -> Poly {
            if rows.is_empty() {
                return Poly::one();
            }
            let mut total = Poly::zero();
            for (k, &c) in cols.iter().enumerate() {
                let e = entry(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = &e * &det(&rows[1..], &rest, entry);
                total = if k % 2 == 0 { &total + &term } else { &total - &term };
            }
            total
        }
        let idx: Vec<usize> = (0..n).collect();
        det(&idx, &idx, &entry)
    }

    #[test]
    fn identity_two() {
        assert_eq!(char_poly(&RationalMatrix::identity(2)), Poly::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn companion_of_cube_minus_one() {
        let c = RationalMatrix::from_i64(3, 3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]);
        assert_eq!(char_poly(&c), Poly::from_i64(&[-1, 0, 0, 1]));
    }

    #[test]
    fn triangle_laplacian_against_cofactor_oracle() {
        // NB graph of C3: two directed triangles, L = Id - B
        let g = Family::Cycle(3).build().unwrap();
        let e = g.edges().to_vec();
        let arcs: Vec<(usize, usize)> = e.iter().copied().chain(e.iter().map(|&(u, v)| (v, u))).collect();
        let l = RationalMatrix::from_fn(6, 6, |i, j| {
            let (a, b) = arcs[i];
            let (c, d) = arcs[j];
            let bij = b == c && a != d;
            match (i == j, bij) {
                (true, _) => q(1, 1),
                (false, true) => q(-1, 1),
                _ => q(0, 1),
            }
        });
        let p = char_poly(&l);
        assert_eq!(p, cofactor_char_poly(&l));
        assert!(p.coeff(0).is_zero());
        assert_eq!(p.degree(), 6);
    }

    #[test]
    fn needs_row_swaps() {
        let m = RationalMatrix::from_i64(4, 4, &[1, 2, 0, 3, 0, 0, 1, 0, 0, 4, 0, 1, 2, 0, 1, 0]);
        assert_eq!(char_poly(&m), cofactor_char_poly(&m));
    }

    proptest! {
        #[test]
        fn matches_cofactor_expansion(n in 1usize..6, entries in proptest::collection::vec((-3i64..4, 1i64..4), 36)) {
            let m = RationalMatrix::from_fn(n, n, |i, j| {
                let (a, b) = entries[i * 6 + j];
                if (a + b) % 3 == 0 { q(0, 1) } else { q(a, b) }
            });
            let p = char_poly(&m);
            prop_assert!(p.is_monic());
            prop_assert_eq!(p.degree(), n);
            prop_assert_eq!(p, cofactor_char_poly(&m));
        }
    }
}
