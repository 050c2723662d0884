//! Matrix Market coordinate format.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::matrix::{q_to_f64, RationalMatrix, Q};

/// Coordinate text. Integer matrices use the `integer` field, all others
/// `real` with 17 significant digits.
pub fn write(m: &RationalMatrix) -> String {
    let integral = (0..m.rows()).all(|i| m.row(i).iter().all(|x| x.is_integer()));
    let field = if integral { "integer" } else { "real" };
    let mut out = format!("%%MatrixMarket matrix coordinate {field} general\n");
    writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nonzero_count()).unwrap();
    for i in 0..m.rows() {
        for (j, x) in m.row(i).iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if integral {
                writeln!(out, "{} {} {}", i + 1, j + 1, x.numer()).unwrap();
            } else {
                writeln!(out, "{} {} {:.16e}", i + 1, j + 1, q_to_f64(x)).unwrap();
            }
        }
    }
    out
}

/// Exact decimal to rational: `[-]digits[.digits][e[-]digits]`.
fn parse_decimal(s: &str) -> Option<Q> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(p) => (&s[..p], s[p + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = format!("{int}{frac}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    let e = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, e.unsigned_abs() as usize);
    let mut v = if e >= 0 {
        Q::from_integer(n * scale)
    } else {
        Q::new(n, scale)
    };
    if neg {
        v = -v;
    }
    Some(v)
}

pub fn read(text: &str) -> Result<RationalMatrix> {
    let mut offset = 0;
    let mut lines = text.split_inclusive('\n').map(|l| {
        let start = offset;
        offset += l.len();
        (start, l.trim())
    });
    let (_, header) = lines.next().ok_or_else(|| Error::parse(0, "empty input"))?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_lowercase).collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" || fields[2] != "coordinate" {
        return Err(Error::parse(0, "expected '%%MatrixMarket matrix coordinate' header"));
    }
    if !["integer", "real", "pattern"].contains(&fields[3].as_str()) || fields[4] != "general" {
        return Err(Error::parse(0, "unsupported field or symmetry"));
    }
    let pattern = fields[3] == "pattern";
    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (off, size) = body.next().ok_or_else(|| Error::parse(text.len(), "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(off, "bad size line")))
        .collect::<Result<_>>()?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(Error::parse(off, "size line needs three integers"));
    };
    let mut m = RationalMatrix::zeros(rows, cols);
    let mut seen = 0;
    for (off, line) in body {
        let t: Vec<&str> = line.split_whitespace().collect();
        let want = if pattern { 2 } else { 3 };
        if t.len() != want {
            return Err(Error::parse(off, format!("expected {want} fields")));
        }
        let i: usize = t[0].parse().map_err(|_| Error::parse(off, "bad row index"))?;
        let j: usize = t[1].parse().map_err(|_| Error::parse(off, "bad column index"))?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(Error::parse(off, "index out of range"));
        }
        let v = if pattern {
            Q::one()
        } else {
            parse_decimal(t[2]).ok_or_else(|| Error::parse(off, "bad value"))?
        };
        m.set(i - 1, j - 1, v);
        seen += 1;
    }
    if seen != nnz {
        return Err(Error::parse(text.len(), format!("expected {nnz} entries, found {seen}")));
    }
    Ok(m)
}
