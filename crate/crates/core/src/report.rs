//! Output formatting shared by the CLI and the summaries.

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::Q;

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// A float with 12 significant digits.
pub fn sig(x: f64) -> String {
    let r = round12(x);
    if r == 0.0 {
        return "0".into();
    }
    format!("{r}")
}

pub fn complex(z: Complex64) -> String {
    match (round12(z.re), round12(z.im)) {
        (re, 0.0) => sig(re),
        (re, im) if im < 0.0 => format!("{}-{}i", sig(re), sig(-im)),
        (re, im) => format!("{}+{}i", sig(re), sig(im)),
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational(x: &Q) -> String {
    x.to_string()
}

/// Values rounded to 12 significant digits before serialization.
pub fn rounded<T: Serialize>(value: &T) -> serde_json::Value {
    fn walk(v: serde_json::Value) -> serde_json::Value {
        use serde_json::Value;
        match v {
            Value::Number(n) if n.is_f64() => {
                let x = round12(n.as_f64().unwrap_or(0.0));
                serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
            }
            Value::Array(a) => Value::Array(a.into_iter().map(walk).collect()),
            Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, walk(v))).collect()),
            other => other,
        }
    }
    walk(serde_json::to_value(value).unwrap_or(serde_json::Value::Null))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig(2.0), "2");
        assert_eq!(sig(-0.0), "0");
        assert_eq!(sig(123456789.123456789), "123456789.123");
        assert_eq!(complex(Complex64::new(1.25, -0.5)), "1.25-0.5i");
        assert_eq!(complex(Complex64::new(0.0, 1e-20)), "0+0.00000000000000000001i");
    }

    #[test]
    fn rationals() {
        assert_eq!(rational(&q(6, -4)), "-3/2");
        assert_eq!(rational(&q(4, 2)), "2");
    }

    #[test]
    fn rounding_json() {
        let v = rounded(&serde_json::json!({"x": [0.1 + 0.2, 1], "s": "a"}));
        assert_eq!(v["x"][0], serde_json::json!(0.3));
        assert_eq!(v["x"][1], serde_json::json!(1));
    }
}
