//! Arbitrary-precision rationals and their "p/q" string form.

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use crate::error::{CrError, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = RBig;

pub fn ratio(numerator: i64, denominator: i64) -> Rational {
    assert!(denominator != 0, "zero denominator");
    RBig::from_parts_signed(IBig::from(numerator), IBig::from(denominator))
}

pub fn integer(n: i64) -> Rational {
    RBig::from(n)
}

/// Always `p/q`, including `q = 1`. Used for exact fields in reports.
pub fn to_ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numerator(), r.denominator())
}

/// Accepts `p`, `p/q`, with an optional sign on `p`.
pub fn parse_ratio(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || CrError::Parse(format!("not an exact rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: IBig = num.parse().map_err(|_| err())?;
    let den: IBig = den.parse().map_err(|_| err())?;
    if den == IBig::ZERO {
        return Err(err());
    }
    Ok(RBig::from_parts_signed(num, den))
}

pub fn is_negative(r: &Rational) -> bool {
    r.numerator() < &IBig::ZERO
}

pub fn is_positive(r: &Rational) -> bool {
    r.numerator() > &IBig::ZERO
}

/// -1, 0 or +1.
pub fn sign(r: &Rational) -> i32 {
    if is_negative(r) {
        -1
    } else if r.is_zero() {
        0
    } else {
        1
    }
}

pub fn abs(r: &Rational) -> Rational {
    if is_negative(r) {
        -r.clone()
    } else {
        r.clone()
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().value()
}

/// The exact dyadic rational equal to a finite `f64`.
pub fn from_f64_exact(x: f64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(CrError::Parse(format!("non-finite value {x}")));
    }
    if x == 0.0 {
        return Ok(RBig::ZERO);
    }
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let fraction = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if exponent == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1u64 << 52), exponent - 1075)
    };
    let mut num = IBig::from(mantissa);
    if negative {
        num = -num;
    }
    let r = if exp >= 0 {
        RBig::from_parts(num << exp as usize, UBig::ONE)
    } else {
        RBig::from_parts(num, UBig::ONE << (-exp) as usize)
    };
    Ok(r)
}

pub fn factorial(n: usize) -> UBig {
    (1..=n).fold(UBig::ONE, |acc, k| acc * UBig::from(k))
}
