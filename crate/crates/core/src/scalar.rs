//! Numeric scalars shared by the series, functional and parametrization code.
//!
//! Everything that must be reproduced bit-exactly runs over [`Rat`] or
//! [`GaussRat`]; the randomized searches reuse the same formulas over
//! [`C64`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Exact rational number.
pub type Rat = BigRational;
/// Exact Gaussian rational `re + i·im`.
pub type GaussRat = Complex<Rat>;
/// Double-precision complex number.
pub type C64 = Complex<f64>;

/// A field element usable as a series coefficient or formula input.
///
/// `Real` is the ordered subfield holding moduli and real parts.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    type Real: Clone + Debug + PartialOrd + Num + Neg<Output = Self::Real>;

    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_real(r: Self::Real) -> Self;
    fn conj(&self) -> Self;
    fn norm_sqr(&self) -> Self::Real;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn to_c64(&self) -> C64;

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn is_real(&self) -> bool {
        self.im().is_zero()
    }
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn gauss(re: Rat, im: Rat) -> GaussRat {
    Complex::new(re, im)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: scale both down first.
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = (n.max(d) - 1000).max(0) as u64;
        let num = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let den = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

/// Exact rational from an `f64` (every finite double is a dyadic rational).
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `-0.125` or `1e-3`
/// into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, ParseError> {
    let t = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(k) => {
            let e: i64 = t[k + 1..].parse().map_err(|_| bad())?;
            (&t[..k], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rat::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rat::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_gauss(z: &GaussRat) -> String {
    if z.im.is_zero() {
        fmt_rat(&z.re)
    } else if z.re.is_zero() {
        format!("({})i", fmt_rat(&z.im))
    } else {
        let sign = if z.im.is_negative() { "-" } else { "+" };
        format!("{} {sign} ({})i", fmt_rat(&z.re), fmt_rat(&z.im.abs()))
    }
}

impl Scalar for Rat {
    type Real = Rat;

    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }
    fn from_real(r: Rat) -> Self {
        r
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn norm_sqr(&self) -> Rat {
        self * self
    }
    fn re(&self) -> Rat {
        self.clone()
    }
    fn im(&self) -> Rat {
        Rat::zero()
    }
    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(self), 0.0)
    }
}

impl Scalar for GaussRat {
    type Real = Rat;

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(rat(num, den), Rat::zero())
    }
    fn from_real(r: Rat) -> Self {
        Complex::new(r, Rat::zero())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn norm_sqr(&self) -> Rat {
        Complex::norm_sqr(self)
    }
    fn re(&self) -> Rat {
        self.re.clone()
    }
    fn im(&self) -> Rat {
        self.im.clone()
    }
    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl Scalar for C64 {
    type Real = f64;

    fn from_ratio(num: i64, den: i64) -> Self {
        C64::new(num as f64 / den as f64, 0.0)
    }
    fn from_real(r: f64) -> Self {
        C64::new(r, 0.0)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn norm_sqr(&self) -> f64 {
        Complex::norm_sqr(self)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
    fn to_c64(&self) -> C64 {
        *self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rat("-1/36").unwrap(), rat(-1, 36));
        assert_eq!(parse_rat("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rat("-2.5e-1").unwrap(), rat(-1, 4));
        assert_eq!(parse_rat("3").unwrap(), rat_int(3));
        assert_eq!(parse_rat("1e2").unwrap(), rat_int(100));
        assert_eq!(parse_rat(".5").unwrap(), rat(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("-").is_err());
    }

    #[test]
    fn canonical_form() {
        let r = rat(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(fmt_rat(&r), "-3/4");
        assert_eq!(fmt_gauss(&gauss(rat(1, 2), rat(-3, 5))), "1/2 - (3/5)i");
    }

    #[test]
    fn huge_rationals_convert_to_finite_f64() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = Rat::new(big.clone() * 3, big);
        assert!((rat_to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
