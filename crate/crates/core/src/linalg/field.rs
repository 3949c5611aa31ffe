use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

/// Exact rationals.
pub type Q = BigRational;

/// The operations the exact algorithms need from a coefficient field.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn q_to_string(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn q_parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad_rational(s))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad_rational(s))?;
            if d.is_zero() {
                return invalid(format!("zero denominator in {s:?}"));
            }
            Q::new(n, d)
        }
        None => Q::from_integer(s.parse().map_err(|_| bad_rational(s))?),
    };
    Ok(parsed)
}

fn bad_rational(s: &str) -> crate::error::Error {
    crate::error::Error::Invalid(format!("not a rational number: {s:?}"))
}

/// Exact conversion of a nonnegative integral rational to `u64`.
pub fn q_to_u64(v: &Q) -> Option<u64> {
    if !v.is_integer() || v.is_negative() {
        return None;
    }
    u64::try_from(v.numer()).ok()
}

/// Serde adapter storing a rational as a JSON string.
pub mod q_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&q_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        q_parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a vector of rationals stored as strings.
pub mod q_vec_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(q_to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| q_parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        assert_eq!(q_parse("3/6").unwrap(), q_frac(1, 2));
        assert_eq!(q_parse("-4").unwrap(), q(-4));
        assert_eq!(q_to_string(&q_frac(-2, 4)), "-1/2");
        assert!(q_parse("1/0").is_err());
        assert!(q_parse("x").is_err());
    }
}
