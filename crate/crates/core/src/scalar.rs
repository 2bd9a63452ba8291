//! Complex scalar abstraction shared by the float and exact pipelines.
//!
//! Two concrete scalar types are supported and never mixed inside a single
//! computation:
//!
//! * [`C64`]: a pair of IEEE-754 binary64 floats. Every arithmetic operation
//!   is correctly rounded per component, so a single product or sum carries a
//!   relative error of at most `u = 2^-53` per real operation; complex
//!   products accumulate at most `sqrt(2) * 2u` relative error. Downstream
//!   code never compares floats for exact equality; it uses the thresholds in
//!   [`crate::Tolerances`].
//! * [`QI`]: a Gaussian rational `p + i q` with `p, q` arbitrary precision
//!   rationals. Arithmetic is exact, associative and distributive.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Complex, One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Double precision complex number.
pub type C64 = Complex<f64>;

/// Exact Gaussian rational.
pub type QI = Complex<BigRational>;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// `true` for the exact rational pipeline.
    const EXACT: bool;

    fn conjugate(&self) -> Self;

    /// `|z|` as a float; exact scalars are rounded.
    fn modulus(&self) -> f64;

    fn to_c64(&self) -> C64;

    fn from_i64(v: i64) -> Self;

    /// Zero test used when pruning polynomial terms. Exact scalars ignore
    /// `threshold` and test for exact zero; float scalars test `|z| <= threshold`.
    fn negligible(&self, threshold: f64) -> bool;
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }

    fn negligible(&self, threshold: f64) -> bool {
        self.norm() <= threshold
    }
}

impl Scalar for QI {
    const EXACT: bool = true;

    fn conjugate(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    fn to_c64(&self) -> C64 {
        C64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn from_i64(v: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    fn negligible(&self, _threshold: f64) -> bool {
        self.is_zero()
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        return v;
    }
    // numerator/denominator too large for a direct conversion
    let shift = q.numer().bits().max(q.denom().bits()) as i64 - 900;
    let scale = BigInt::one() << (shift.max(0) as u32);
    let n = (q.numer() / &scale).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() / &scale).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Squared modulus of a Gaussian rational, exactly.
pub fn abs_sq(z: &QI) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(re: BigRational, im: BigRational) -> QI {
    Complex::new(re, im)
}

pub fn qi_int(re: i64, im: i64) -> QI {
    Complex::new(rational(re, 1), rational(im, 1))
}

/// Parses a decimal rational `"p/q"`, `"p"` or a finite decimal `"0.25"`.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseError::Rational(text.to_string()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| ParseError::Rational(text.to_string()))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| ParseError::Rational(text.to_string()))?;
        if d.is_zero() {
            return Err(ParseError::Rational(text.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let negative = ip.trim_start().starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| ParseError::Rational(text.to_string()))?;
        let d = num::pow(BigInt::from(10), fp.len());
        let q = BigRational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    let n = BigInt::from_str(t).map_err(|_| ParseError::Rational(text.to_string()))?;
    Ok(BigRational::from_integer(n))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Converts a float to the exact rational it represents.
pub fn rational_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

pub fn is_negative(q: &BigRational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rational(3, 4));
        assert_eq!(parse_rational("-0.25").unwrap(), rational(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rational(6, 8)), "3/4");
        assert_eq!(format_rational(&rational(-4, 2)), "-2");
    }

    #[test]
    fn exact_conjugate_and_modulus() {
        let z = qi_int(3, 4);
        assert_eq!(z.conjugate(), qi_int(3, -4));
        assert_eq!(abs_sq(&z), rational(25, 1));
        assert!((z.modulus() - 5.0).abs() < 1e-15);
    }
}
