use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Q;

/// Univariate polynomial over the rationals, coefficients in ascending order.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn x() -> Self {
        Poly::monomial(Q::one(), 1)
    }

    /// `x - r`
    pub fn linear_root(r: &Q) -> Self {
        Poly::new(vec![-r.clone(), Q::one()])
    }

    /// `x^k - 1`
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut p = Poly::monomial(Q::one(), k);
        p.coeffs[0] -= Q::one();
        Poly::new(p.coeffs)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn scale(&self, c: &Q) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dl = d.leading();
        let dd = d.degree();
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Multiplicity of the rational root `r` (0 if not a root).
    pub fn root_multiplicity(&self, r: &Q) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (quot, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                return k;
            }
            p = quot;
            k += 1;
        }
    }

    /// Splits off the factor `x^k` of maximal `k`.
    pub fn strip_zero_roots(&self) -> (usize, Poly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (0, Poly::zero());
        }
        (k, Poly::new(self.coeffs[k..].to_vec()))
    }

    /// Yun's square-free decomposition: pairwise coprime monic square-free
    /// factors `a_i` with `self = lc * prod a_i^i`. Constant factors are omitted.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            let b_next = b.div_rem(&a).0;
            let c_next = d.div_rem(&a).0;
            d = &c_next - &b_next.derivative();
            if a.degree() > 0 {
                out.push((a, i));
            }
            b = b_next;
            i += 1;
        }
        out
    }

    /// Primitive integer coefficients with positive leading coefficient, and
    /// the rational factor `c` with `self = c * primitive`.
    pub fn integer_form(&self) -> (Vec<BigInt>, Q) {
        if self.is_zero() {
            return (Vec::new(), Q::zero());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (prim, Q::new(g, lcm))
    }

    /// Coefficients as strings, ascending, rationals as `p/q`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::q;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -2, 1]).to_string(), "x^2 - 2x + 1");
        assert_eq!(p(&[-1, 0, 0, 1]).to_string(), "x^3 - 1");
        assert_eq!(Poly::new(vec![q(1, 3), q(-1, 1)]).to_string(), "-x + 1/3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn division() {
        let (quot, rem) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(quot, p(&[1, 1, 1]));
        assert!(rem.is_zero());
        let (quot, rem) = p(&[1, 0, 1]).div_rem(&p(&[0, 2]));
        assert_eq!(quot, Poly::new(vec![q(0, 1), q(1, 2)]));
        assert_eq!(rem, p(&[1]));
    }

    #[test]
    fn gcd_and_multiplicity() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let c = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[0, 0, 0, 1]);
        assert_eq!(c.root_multiplicity(&q(1, 1)), 2);
        assert_eq!(c.root_multiplicity(&q(0, 1)), 3);
        assert_eq!(c.root_multiplicity(&q(2, 1)), 0);
        assert_eq!(c.strip_zero_roots(), (3, &p(&[-1, 1]) * &p(&[-1, 1])));
    }

    #[test]
    fn squarefree_decomposition() {
        // (x-1)^3 (x+2)^2 (x^2+1)
        let l1 = p(&[-1, 1]);
        let l2 = p(&[2, 1]);
        let q2 = p(&[1, 0, 1]);
        let f = &(&(&(&l1 * &l1) * &l1) * &(&l2 * &l2)) * &q2;
        let sf = f.scale(&q(3, 1)).squarefree();
        assert_eq!(sf, vec![(q2, 1), (l2, 2), (l1, 3)]);
    }

    #[test]
    fn integer_form() {
        let f = Poly::new(vec![q(1, 2), q(-1, 3), q(2, 3)]);
        let (ints, c) = f.integer_form();
        let ints: Vec<i64> = ints.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(ints, vec![3, -2, 4]);
        assert_eq!(c, q(1, 6));
    }

    proptest! {
        #[test]
        fn division_identity(a in proptest::collection::vec(-5i64..5, 0..7),
                             b in proptest::collection::vec(-5i64..5, 1..5)) {
            let a = p(&a);
            let b = p(&b);
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.div_rem(&b);
            prop_assert_eq!(&(&quot * &b) + &rem, a);
            prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        }

        #[test]
        fn squarefree_reassembles(roots in proptest::collection::vec((-3i64..3, 1usize..4), 1..4)) {
            let mut f = Poly::one();
            for &(r, k) in &roots {
                for _ in 0..k {
                    f = &f * &p(&[-r, 1]);
                }
            }
            let mut g = Poly::one();
            for (factor, k) in f.squarefree() {
                prop_assert_eq!(factor.gcd(&factor.derivative()), Poly::one());
                for _ in 0..k {
                    g = &g * &factor;
                }
            }
            prop_assert_eq!(g, f);
        }
    }
}
