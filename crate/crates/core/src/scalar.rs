//! Exact arithmetic in a quadratic field ℚ(√D).
//!
//! A [`QuadScalar`] is `x + y·√D` with rational `x`, `y` and a rational
//! discriminant `D` that names the ambient field. Values whose field is
//! ℚ itself (`D` a rational square) always have `y = 0` and combine freely
//! with any field; two irrational fields never mix.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Parse a rational literal in `p/q` or `p` form, with an optional sign.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let num = BigInt::from_str(p.trim()).ok();
            let den = BigInt::from_str(q.trim()).ok();
            match (num, den) {
                (Some(n), Some(d)) if !d.is_zero() => Some(BigRational::new(n, d)),
                _ => None,
            }
        }
        None => BigInt::from_str(t).ok().map(BigRational::from_integer),
    };
    parsed.ok_or_else(|| Error::InvalidRational(text.to_string()))
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer();
    let den = q.denom();
    let rn = num.sqrt();
    let rd = den.sqrt();
    (&rn * &rn == *num && &rd * &rd == *den).then(|| BigRational::new(rn, rd))
}

/// Small random rational `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> BigRational {
    let p = rng.gen_range(-max_num..=max_num);
    let q = rng.gen_range(1..=max_den);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug)]
pub struct QuadScalar {
    x: BigRational,
    y: BigRational,
    d: BigRational,
}

impl QuadScalar {
    /// `x + y√d`, folded into a rational when `d` is a rational square.
    pub fn new(x: BigRational, y: BigRational, d: BigRational) -> Self {
        match rational_sqrt(&d) {
            Some(r) => Self { x: x + y * r, y: BigRational::zero(), d },
            None => Self { x, y, d },
        }
    }

    pub fn rational(x: BigRational) -> Self {
        Self { x, y: BigRational::zero(), d: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(rat(v))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√d` as an element of ℚ(√d).
    pub fn sqrt_of(d: BigRational) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    /// Discriminant this value was created in (zero for plain rationals).
    pub fn discriminant(&self) -> &BigRational {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// The rational value, if `y = 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.x)
    }

    fn is_rational_field(&self) -> bool {
        rational_sqrt(&self.d).is_some()
    }

    /// Discriminant shared by `self` and `other`.
    fn common_field(&self, other: &Self) -> Result<BigRational> {
        if self.d == other.d || other.is_rational_field() {
            Ok(self.d.clone())
        } else if self.is_rational_field() {
            Ok(other.d.clone())
        } else if self.y.is_zero() && other.y.is_zero() {
            // two rationals tagged with different fields still compare as rationals
            Ok(self.d.clone())
        } else {
            Err(Error::DiscriminantMismatch { left: self.d.to_string(), right: other.d.to_string() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(Self { x: &self.x + &other.x, y: &self.y + &other.y, d })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let x = &self.x * &other.x + &self.y * &other.y * &d;
        let y = &self.x * &other.y + &self.y * &other.x;
        Ok(Self { x, y, d })
    }

    pub fn neg(&self) -> Self {
        Self { x: -&self.x, y: -&self.y, d: self.d.clone() }
    }

    /// Field norm `x² − D·y²`.
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - &self.y * &self.y * &self.d
    }

    pub fn conjugate(&self) -> Self {
        Self { x: self.x.clone(), y: -&self.y, d: self.d.clone() }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Self { x: c.x / &n, y: c.y / &n, d: self.d.clone() })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self { x: BigRational::one(), y: BigRational::zero(), d: self.d.clone() };
        for _ in 0..exp {
            acc = acc.try_mul(self).expect("same field");
        }
        acc
    }

    /// Complex approximation `(re, im)`; `im` is nonzero only for `D < 0`.
    pub fn approx(&self) -> (f64, f64) {
        let x = self.x.to_f64().unwrap_or(f64::NAN);
        let y = self.y.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        if self.y.is_zero() {
            (x, 0.0)
        } else if d >= 0.0 {
            (x + y * d.sqrt(), 0.0)
        } else {
            (x, y * (-d).sqrt())
        }
    }

    /// Decimal rendering of [`approx`](Self::approx).
    pub fn approx_string(&self) -> String {
        let (re, im) = self.approx();
        if im == 0.0 {
            format!("{re:.12}")
        } else if im < 0.0 {
            format!("{re:.12} - {:.12}i", -im)
        } else {
            format!("{re:.12} + {im:.12}i")
        }
    }
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y && (self.y.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadScalar {}

impl From<BigRational> for QuadScalar {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for QuadScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl FromStr for QuadScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Self::rational)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let y_abs = self.y.abs();
        let root = if y_abs.is_one() { format!("√({})", self.d) } else { format!("{y_abs}·√({})", self.d) };
        match (self.x.is_zero(), self.y.is_negative()) {
            (true, false) => write!(f, "{root}"),
            (true, true) => write!(f, "-{root}"),
            (false, false) => write!(f, "{} + {root}", self.x),
            (false, true) => write!(f, "{} - {root}", self.x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_signed_fractions() {
        assert_eq!(q("-3/2"), BigRational::new((-3).into(), 2.into()));
        assert_eq!(q("4/-2"), rat(-2));
        assert_eq!(q(" 7 "), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn square_discriminant_folds() {
        let s = QuadScalar::new(q("1"), q("2"), q("9/4"));
        assert!(s.is_rational());
        assert_eq!(s.x(), &q("4"));
        assert_eq!(QuadScalar::sqrt_of(q("0")), QuadScalar::zero());
    }

    #[test]
    fn sqrt_squares_to_discriminant() {
        let r5 = QuadScalar::sqrt_of(q("5"));
        assert_eq!(r5.try_mul(&r5).unwrap(), QuadScalar::from_int(5));
        let i = QuadScalar::sqrt_of(q("-1"));
        assert_eq!(i.try_mul(&i).unwrap(), QuadScalar::from_int(-1));
    }

    #[test]
    fn mixing_fields_is_rejected() {
        let a = QuadScalar::sqrt_of(q("5"));
        let b = QuadScalar::sqrt_of(q("7"));
        assert!(matches!(a.try_add(&b), Err(Error::DiscriminantMismatch { .. })));
        // rationals mix with anything
        assert!(a.try_mul(&QuadScalar::from_int(3)).is_ok());
    }

    #[test]
    fn inverse_round_trips() {
        let s = QuadScalar::new(q("-3/2"), q("1/2"), q("5"));
        let inv = s.inverse().unwrap();
        assert!(s.try_mul(&inv).unwrap().is_one());
        assert!(QuadScalar::zero().inverse().is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(QuadScalar::new(q("-3/2"), q("1/2"), q("5")).to_string(), "-3/2 + 1/2·√(5)");
        assert_eq!(QuadScalar::new(q("0"), q("-1"), q("5")).to_string(), "-√(5)");
        assert_eq!(QuadScalar::from_int(-1).to_string(), "-1");
    }

    #[test]
    fn negative_discriminant_approximates_complex() {
        let s = QuadScalar::new(q("-1/2"), q("1/2"), q("-3"));
        let (re, im) = s.approx();
        assert!((re + 0.5).abs() < 1e-12);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }
}
