//! Complex roots of square-free rational polynomials.
//!
//! Starting points come from the companion matrix (real Schur form). They are
//! refined by simultaneous Aberth-Ehrlich iteration in which `p(z)` and `p'(z)`
//! are evaluated exactly at the dyadic rational nearest to `z`, so the final
//! accuracy is limited only by the `f64` representation of the roots.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::matrix::q_to_f64;
use super::poly::Poly;

const FRAC_BITS: u32 = 80;
const MAX_ITER: usize = 500;

/// Scales `x * 2^e` without intermediate overflow.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// `x * 2^-shift` rounded to `f64`.
fn big_to_f64(x: &BigInt, shift: u64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits();
    if bits <= 900 {
        return ldexp(x.to_f64().expect("fits"), -(shift as i64));
    }
    let drop = bits - 64;
    let top = (x >> drop).to_f64().expect("fits");
    ldexp(top, drop as i64 - shift as i64)
}

/// Exact evaluation of an integer polynomial and its derivative.
pub(crate) struct ExactEvaluator {
    coeffs: Vec<BigInt>,
    dcoeffs: Vec<BigInt>,
}

impl ExactEvaluator {
    pub(crate) fn new(p: &Poly) -> Self {
        let (coeffs, _) = p.integer_form();
        let dcoeffs = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        ExactEvaluator { coeffs, dcoeffs }
    }

    fn horner(coeffs: &[BigInt], a: &BigInt, b: &BigInt) -> Complex64 {
        let d = coeffs.len() - 1;
        let mut re = coeffs[d].clone();
        let mut im = BigInt::zero();
        for i in (0..d).rev() {
            let nre = &re * a - &im * b;
            let nim = &re * b + &im * a;
            re = nre + (&coeffs[i] << (FRAC_BITS as usize * (d - i)));
            im = nim;
        }
        let shift = FRAC_BITS as u64 * d as u64;
        Complex64::new(big_to_f64(&re, shift), big_to_f64(&im, shift))
    }

    /// `(p(z), p'(z))` evaluated exactly at the dyadic rounding of `z`.
    pub(crate) fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let scale = 2f64.powi(FRAC_BITS as i32);
        let a = BigInt::from_f64((z.re * scale).round()).unwrap_or_default();
        let b = BigInt::from_f64((z.im * scale).round()).unwrap_or_default();
        let p = Self::horner(&self.coeffs, &a, &b);
        let dp = if self.dcoeffs.is_empty() {
            Complex64::zero()
        } else {
            Self::horner(&self.dcoeffs, &a, &b)
        };
        (p, dp)
    }
}

fn companion_roots(p: &Poly) -> Option<Vec<Complex64>> {
    let d = p.degree();
    let lead = q_to_f64(&p.leading());
    let c: Vec<f64> = p.coeffs().iter().map(|x| q_to_f64(x) / lead).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let comp = DMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -c[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let schur = Schur::try_new(comp, 1e-15, 10_000)?;
    let roots: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    roots.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(roots)
}

fn circle_start(p: &Poly) -> Vec<Complex64> {
    let d = p.degree();
    let lead = q_to_f64(&p.leading()).abs();
    let radius = 1.0
        + p.coeffs()[..d]
            .iter()
            .map(|x| q_to_f64(x).abs() / lead)
            .fold(0.0, f64::max);
    (0..d)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect()
}

fn aberth(eval: &ExactEvaluator, roots: &mut [Complex64]) -> bool {
    let n = roots.len();
    let mut polish = 3;
    for _ in 0..MAX_ITER {
        let mut worst = 0.0f64;
        for k in 0..n {
            let z = roots[k];
            let (p, dp) = eval.eval(z);
            if p.is_zero() {
                continue;
            }
            let ratio = if dp.is_zero() { Complex64::new(1e-8, 1e-8) } else { p / dp };
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z - roots[j];
                    if diff.is_zero() {
                        Complex64::new(1e12, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * s;
            let step = if denom.norm() < 1e-300 { ratio } else { ratio / denom };
            roots[k] = z - step;
            worst = worst.max(step.norm() / z.norm().max(1.0));
        }
        if worst < 1e-14 {
            if polish == 0 {
                return true;
            }
            polish -= 1;
        }
    }
    false
}

/// All complex roots of a square-free polynomial of positive degree.
pub fn squarefree_roots(p: &Poly) -> Result<Vec<Complex64>> {
    let d = p.degree();
    if p.is_zero() || d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        let r = -p.coeff(0) / p.coeff(1);
        return Ok(vec![Complex64::new(q_to_f64(&r), 0.0)]);
    }
    let eval = ExactEvaluator::new(p);
    let mut roots = companion_roots(p).unwrap_or_else(|| circle_start(p));
    let mut converged = aberth(&eval, &mut roots);
    if !converged {
        roots = circle_start(p);
        converged = aberth(&eval, &mut roots);
    }
    if !converged {
        return Err(Error::Numeric {
            message: format!("root refinement did not converge for degree {d}"),
            fingerprint: format!("poly:{p}"),
        });
    }
    for z in roots.iter_mut() {
        if z.im.abs() <= 1e-13 * z.norm().max(1.0) {
            z.im = 0.0;
        }
    }
    Ok(roots)
}
