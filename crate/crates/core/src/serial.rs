//! JSON wire records shared by reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::QuadScalar;

/// Integer that serializes as a JSON number when it fits in `i64`, else as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireInt(pub BigInt);

impl Serialize for WireInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.collect_str(&self.0),
        }
    }
}

impl<'de> Deserialize<'de> for WireInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(v) => Ok(WireInt(v.into())),
            Raw::Text(s) => s.parse().map(WireInt).map_err(serde::de::Error::custom),
        }
    }
}

fn split(q: &BigRational) -> (WireInt, WireInt) {
    (WireInt(q.numer().clone()), WireInt(q.denom().clone()))
}

fn join(num: WireInt, den: WireInt) -> Result<BigRational> {
    if den.0.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num.0, den.0))
}

/// `{x_num, x_den, y_num, y_den, D_num, D_den}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarRecord {
    pub x_num: WireInt,
    pub x_den: WireInt,
    pub y_num: WireInt,
    pub y_den: WireInt,
    #[serde(rename = "D_num")]
    pub d_num: WireInt,
    #[serde(rename = "D_den")]
    pub d_den: WireInt,
}

impl From<&QuadScalar> for ScalarRecord {
    fn from(s: &QuadScalar) -> Self {
        let (x_num, x_den) = split(s.x());
        let (y_num, y_den) = split(s.y());
        let (d_num, d_den) = split(s.discriminant());
        Self { x_num, x_den, y_num, y_den, d_num, d_den }
    }
}

impl TryFrom<ScalarRecord> for QuadScalar {
    type Error = Error;

    fn try_from(r: ScalarRecord) -> Result<Self> {
        Ok(QuadScalar::new(join(r.x_num, r.x_den)?, join(r.y_num, r.y_den)?, join(r.d_num, r.d_den)?))
    }
}

/// Matrix entry without the discriminant: `[x_num, x_den, y_num, y_den]`.
pub type EntryRecord = [WireInt; 4];

pub fn entry_record(s: &QuadScalar) -> EntryRecord {
    let (xn, xd) = split(s.x());
    let (yn, yd) = split(s.y());
    [xn, xd, yn, yd]
}

/// Rational as `[num, den]`.
pub fn rational_record(q: &BigRational) -> [WireInt; 2] {
    let (n, d) = split(q);
    [n, d]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;
    use proptest::prelude::*;

    #[test]
    fn scalar_json_shape() {
        let s = QuadScalar::new(
            parse_rational("-3/2").unwrap(),
            parse_rational("1/2").unwrap(),
            parse_rational("5").unwrap(),
        );
        let json = serde_json::to_string(&ScalarRecord::from(&s)).unwrap();
        assert_eq!(json, r#"{"x_num":-3,"x_den":2,"y_num":1,"y_den":2,"D_num":5,"D_den":1}"#);
    }

    #[test]
    fn huge_integers_fall_back_to_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let json = serde_json::to_string(&WireInt(big.clone())).unwrap();
        assert_eq!(json, "\"123456789012345678901234567890\"");
        assert_eq!(serde_json::from_str::<WireInt>(&json).unwrap(), WireInt(big));
    }

    proptest! {
        #[test]
        fn scalar_records_round_trip(xn in -50i64..50, xd in 1i64..20, yn in -50i64..50, yd in 1i64..20, d in -12i64..12) {
            let s = QuadScalar::new(
                BigRational::new(xn.into(), xd.into()),
                BigRational::new(yn.into(), yd.into()),
                BigRational::from_integer(d.into()),
            );
            let json = serde_json::to_string(&ScalarRecord::from(&s)).unwrap();
            let back: ScalarRecord = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(QuadScalar::try_from(back).unwrap(), s);
        }
    }
}
