//! JSON conventions: every number is a decimal string, balls are
//! `{mid, rad, bits}` objects, rationals are `"p/q"` strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::interval::decimal::{ball_to_decimal, parse_ball, parse_rational, rat_to_string};
use crate::interval::{ComplexBall, RealBall};

#[derive(Serialize, Deserialize)]
struct BallJson {
    mid: String,
    rad: String,
    bits: String,
}

impl Serialize for RealBall {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (mid, rad) = ball_to_decimal(self);
        BallJson { mid, rad, bits: self.prec().to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealBall {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = BallJson::deserialize(d)?;
        parse_ball(&format!("{} ± {} @ {}", j.mid, j.rad, j.bits)).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    re: RealBall,
    im: RealBall,
}

impl Serialize for ComplexBall {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ComplexJson { re: self.re.clone(), im: self.im.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexBall {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ComplexJson::deserialize(d)?;
        Ok(ComplexBall::new(j.re, j.im))
    }
}

/// `Vec<ComplexBall>` field helper.
pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[ComplexBall], s: S) -> Result<S::Ok, S::Error> {
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<ComplexBall>, D::Error> {
        Vec::<ComplexBall>::deserialize(d)
    }
}

/// Rational as `"p/q"` (or `"p"`).
pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// `Option<Rat>` as string or null.
pub mod opt_rat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&rat_to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        match Option::<String>::deserialize(d)? {
            Some(s) => parse_rational(&s).map(Some).map_err(D::Error::custom),
            None => Ok(None),
        }
    }
}

/// Integer as a decimal string.
pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(D::Error::custom)
    }
}

/// `Vec<BigInt>` as decimal strings.
pub mod int_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| s.trim().parse().map_err(D::Error::custom)).collect()
    }
}

/// `Option<BigInt>` as string or null.
pub mod opt_int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        match Option::<String>::deserialize(d)? {
            Some(s) => s.trim().parse().map(Some).map_err(D::Error::custom),
            None => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_json_round_trip_encloses() {
        let b = RealBall::from_rat(&BigRational::new(1.into(), 7.into()), 90);
        let j = serde_json::to_string(&b).unwrap();
        assert!(j.contains("\"bits\":\"90\""));
        let back: RealBall = serde_json::from_str(&j).unwrap();
        assert!(back.contains(&b));
    }

    #[test]
    fn rational_field() {
        #[derive(Serialize, Deserialize, PartialEq, Debug)]
        struct T {
            #[serde(with = "rat")]
            r: BigRational,
        }
        let t = T { r: BigRational::new(6.into(), (-4).into()) };
        let j = serde_json::to_string(&t).unwrap();
        assert_eq!(j, r#"{"r":"-3/2"}"#);
        assert_eq!(serde_json::from_str::<T>(&j).unwrap(), t);
    }
}
