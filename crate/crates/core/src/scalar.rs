//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field: arbitrary precision rationals.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Formats a coefficient in front of a monomial: `""`, `"-"`, `"3"`, `"-1/2"`.
pub fn fmt_coeff(x: &Q) -> String {
    if x.is_one() {
        String::new()
    } else if (-x).is_one() {
        "-".to_string()
    } else {
        fmt_q(x)
    }
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

/// Serializes a rational in its canonical string form.
pub fn serialize_q<S: serde::Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6"), Some(qf(1, 2)));
        assert_eq!(parse_q("-4"), Some(q(-4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
        assert_eq!(fmt_q(&qf(-2, 4)), "-1/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert_eq!(fmt_coeff(&q(-1)), "-");
    }
}
