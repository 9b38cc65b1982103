use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported characteristic; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Coefficient field: the rationals or a prime field `GF(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Q, GF(2), GF(3): the fields every corpus check runs over.
    pub fn standard() -> [FieldSpec; 3] {
        [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)]
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn element(&self, value: i64) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(value.into())),
            FieldSpec::Prime(p) => FieldElement::Residue {
                value: value.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// Short command-line spelling: `q` or the prime itself.
    pub fn tag(&self) -> String {
        match self {
            FieldSpec::Rationals => "q".to_owned(),
            FieldSpec::Prime(p) => p.to_string(),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t == "0" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .or_else(|| t.strip_prefix("gf("))
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let p: u64 = inner.parse().map_err(|_| Error::Parse {
            line: 0,
            message: format!("field must be `q` or a prime, got `{s}`"),
        })?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A single field element of some [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    /// The integer this element equals, choosing the symmetric residue
    /// representative in prime fields. `None` for non-integral rationals.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Rational(q) if q.is_integer() => {
                let n: &BigInt = q.numer();
                i64::try_from(n).ok()
            }
            FieldElement::Rational(_) => None,
            FieldElement::Residue { value, p } => {
                let v = *value as i64;
                Some(if 2 * v > *p as i64 { v - *p as i64 } else { v })
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Residue { .. } => false,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_checked() {
        assert_eq!(FieldSpec::prime(2), Ok(FieldSpec::Prime(2)));
        assert_eq!(FieldSpec::prime(7919), Ok(FieldSpec::Prime(7919)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(91), Err(Error::NotPrime(91)));
        assert_eq!(FieldSpec::prime(1 << 40), Err(Error::NotPrime(1 << 40)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("GF(5)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(5));
        assert!("4".parse::<FieldSpec>().is_err());
        assert!("x".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(2).to_string(), "GF(2)");
        let json = serde_json::to_string(&FieldSpec::Prime(3)).unwrap();
        assert_eq!(serde_json::from_str::<FieldSpec>(&json).unwrap(), FieldSpec::Prime(3));
    }

    #[test]
    fn elements() {
        assert_eq!(FieldSpec::Prime(3).element(-1).to_i64(), Some(-1));
        assert_eq!(FieldSpec::Prime(2).element(-1).to_i64(), Some(1));
        assert!(FieldSpec::Prime(3).element(6).is_zero());
        assert_eq!(FieldSpec::Rationals.element(-4).to_i64(), Some(-4));
    }
}
