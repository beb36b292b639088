//! Exact scalar fields.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which field a quadruple is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Prime { p: u64 },
}

impl FieldKind {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rational => 0,
            FieldKind::Prime { p } => *p,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if let FieldKind::Prime { p } = self {
            if !is_prime(*p) {
                return Err(Error::Malformed(format!("field modulus {p} is not prime")));
            }
            if *p > u32::MAX as u64 {
                return Err(Error::Malformed(format!("field modulus {p} exceeds the supported range (< 2^32)")));
            }
        }
        Ok(())
    }
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact, computable field.
///
/// `zero()`/`one()` carry no field context; implementations must let such
/// constants combine with any element of the field (see [`crate::Fp`]).
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The integer `v` as an element of `field`.
    fn from_int(v: i64, field: &FieldKind) -> Self;

    /// Parse a serialized literal (`"p/q"`, `"p"`, or a residue).
    fn parse_literal(s: &str, field: &FieldKind) -> Result<Self, Error>;

    /// Canonical serialized literal, reduced into `field`.
    fn to_literal(&self, field: &FieldKind) -> String;

    /// Multiplicative inverse, `None` for zero.
    fn try_inverse(&self) -> Option<Self>;

    /// Whether values of this type can represent `field`.
    fn supports(field: &FieldKind) -> bool;
}

pub type Rational = BigRational;

impl Field for BigRational {
    fn from_int(v: i64, _field: &FieldKind) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse_literal(s: &str, _field: &FieldKind) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Malformed(format!("invalid rational literal {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::Malformed(format!("zero denominator in {s:?}")));
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }

    fn to_literal(&self, _field: &FieldKind) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn supports(field: &FieldKind) -> bool {
        matches!(field, FieldKind::Rational)
    }
}
