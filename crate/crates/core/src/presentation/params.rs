use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::QuadScalar;
use crate::serial::{rational_record, ScalarRecord, WireInt};

/// Roots of `b² + λb + 1 = 0`: `b± = −½(λ ∓ √(λ²−4))`, living in `ℚ(√(λ²−4))`.
pub fn solve_ab(lambda: &QuadScalar) -> Result<(QuadScalar, QuadScalar)> {
    let l =
        lambda.as_rational().ok_or_else(|| Error::Unsupported(format!("loop value must be rational, got {lambda}")))?;
    let d = discriminant_of(l);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let base = -(l * &half);
    let b_plus = QuadScalar::new(base.clone(), half.clone(), d.clone());
    let b_minus = QuadScalar::new(base, -half, d);
    Ok((b_plus, b_minus))
}

/// `λ² − 4`.
pub fn discriminant_of(lambda: &BigRational) -> BigRational {
    lambda * lambda - BigRational::from_integer(BigInt::from(4))
}

/// Coefficients of `ρ_i = a + bE_i + cv_i` together with the loop value `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoParams {
    pub a: QuadScalar,
    pub b: QuadScalar,
    pub c: QuadScalar,
    pub lambda: QuadScalar,
}

impl RhoParams {
    /// All of `a, b, c` must be rational or live in `ℚ(√(λ²−4))`.
    pub fn new(a: QuadScalar, b: QuadScalar, c: QuadScalar, lambda: QuadScalar) -> Result<Self> {
        let l = lambda
            .as_rational()
            .ok_or_else(|| Error::Unsupported(format!("loop value must be rational, got {lambda}")))?;
        let d = discriminant_of(l);
        for s in [&a, &b, &c] {
            if !s.is_rational() && s.discriminant() != &d {
                return Err(Error::DiscriminantMismatch { left: d.to_string(), right: s.discriminant().to_string() });
            }
        }
        Ok(Self { a, b, c, lambda })
    }

    /// `a = 1, b = b₊(λ), c = 0`.
    pub fn braid_plus(lambda: QuadScalar) -> Result<Self> {
        let (bp, _) = solve_ab(&lambda)?;
        Self::new(QuadScalar::one(), bp, QuadScalar::zero(), lambda)
    }

    /// `a = 1, b = b₋(λ), c = 0`.
    pub fn braid_minus(lambda: QuadScalar) -> Result<Self> {
        let (_, bm) = solve_ab(&lambda)?;
        Self::new(QuadScalar::one(), bm, QuadScalar::zero(), lambda)
    }

    pub fn rational(a: i64, b: i64, c: i64, lambda: i64) -> Self {
        Self {
            a: QuadScalar::from_int(a),
            b: QuadScalar::from_int(b),
            c: QuadScalar::from_int(c),
            lambda: QuadScalar::from_int(lambda),
        }
    }

    pub fn with_c(&self, c: QuadScalar) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), c, self.lambda.clone())
    }

    pub fn discriminant(&self) -> BigRational {
        discriminant_of(self.lambda.as_rational().expect("validated on construction"))
    }

    pub fn to_record(&self) -> ParamsRecord {
        ParamsRecord {
            a: ScalarRecord::from(&self.a),
            b: ScalarRecord::from(&self.b),
            c: ScalarRecord::from(&self.c),
            lambda: ScalarRecord::from(&self.lambda),
            d: rational_record(&self.discriminant()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsRecord {
    pub a: ScalarRecord,
    pub b: ScalarRecord,
    pub c: ScalarRecord,
    pub lambda: ScalarRecord,
    #[serde(rename = "D")]
    pub d: [WireInt; 2],
}
