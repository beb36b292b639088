//! Prime fields with a modulus chosen at run time.

use std::fmt::{self, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Field, FieldKind};
use crate::error::Error;

/// An element of `F_p`.
///
/// The modulus travels with the value. Constants produced without a field
/// context (`zero()`, `one()`, and their sums and negations) stay as plain
/// integers until they meet a bound residue, at which point they are reduced.
#[derive(Clone, Copy, Debug)]
pub enum Fp {
    Int(i64),
    Res { v: u64, p: u64 },
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp::Res { v: v.rem_euclid(p as i64) as u64, p }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Fp::Int(_) => None,
            Fp::Res { p, .. } => Some(*p),
        }
    }

    fn bind(self, p: u64) -> (u64, u64) {
        match self {
            Fp::Int(a) => (a.rem_euclid(p as i64) as u64, p),
            Fp::Res { v, p: q } => {
                assert_eq!(p, q, "mixing residues of different prime fields");
                (v, q)
            }
        }
    }

    fn combine(self, rhs: Fp, int_op: impl Fn(i64, i64) -> Option<i64>, res_op: impl Fn(u64, u64, u64) -> u64) -> Fp {
        match (self, rhs) {
            (Fp::Int(a), Fp::Int(b)) => Fp::Int(int_op(a, b).expect("unbound prime-field constant overflow")),
            (Fp::Res { p, .. }, _) | (_, Fp::Res { p, .. }) => {
                let (a, _) = self.bind(p);
                let (b, _) = rhs.bind(p);
                Fp::Res { v: res_op(a, b, p), p }
            }
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (*self, *other) {
            (Fp::Int(a), Fp::Int(b)) => a == b,
            (Fp::Res { v, p }, other) | (other, Fp::Res { v, p }) => other.bind(p).0 == v,
        }
    }
}

impl Eq for Fp {}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fp::Int(a) => write!(f, "{a}"),
            Fp::Res { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp::Int(0)
    }
    fn is_zero(&self) -> bool {
        match self {
            Fp::Int(a) => *a == 0,
            Fp::Res { v, .. } => *v == 0,
        }
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp::Int(1)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        match self {
            Fp::Int(a) => Fp::Int(-a),
            Fp::Res { v, p } => Fp::Res { v: (p - v) % p, p },
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.combine(rhs, i64::checked_add, |a, b, p| (a + b) % p)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.combine(rhs, i64::checked_sub, |a, b, p| (a + p - b) % p)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.combine(rhs, i64::checked_mul, |a, b, p| a * b % p)
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        let inv = rhs.try_inverse().expect("division by zero in F_p");
        self * inv
    }
}

impl Field for Fp {
    fn from_int(v: i64, field: &FieldKind) -> Self {
        match field {
            FieldKind::Prime { p } => Fp::new(v, *p),
            FieldKind::Rational => Fp::Int(v),
        }
    }

    fn parse_literal(s: &str, field: &FieldKind) -> Result<Self, Error> {
        let p = match field {
            FieldKind::Prime { p } => *p,
            FieldKind::Rational => return Err(Error::Malformed("prime-field scalar outside a prime field".into())),
        };
        let s = s.trim();
        let bad = || Error::Malformed(format!("invalid residue literal {s:?}"));
        let parse_int = |t: &str| -> Result<Fp, Error> {
            let big: i128 = t.trim().parse().map_err(|_| bad())?;
            Ok(Fp::Res { v: big.rem_euclid(p as i128) as u64, p })
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Malformed(format!("denominator of {s:?} vanishes mod {p}")));
                }
                Ok(parse_int(n)? / d)
            }
            None => parse_int(s),
        }
    }

    fn to_literal(&self, field: &FieldKind) -> String {
        match (self, field) {
            (Fp::Int(a), FieldKind::Prime { p }) => (a.rem_euclid(*p as i64)).to_string(),
            _ => self.to_string(),
        }
    }

    fn try_inverse(&self) -> Option<Self> {
        match *self {
            Fp::Int(0) => None,
            Fp::Int(1) => Some(Fp::Int(1)),
            Fp::Int(-1) => Some(Fp::Int(-1)),
            Fp::Int(a) => panic!("cannot invert the unbound constant {a} outside a prime field"),
            Fp::Res { v: 0, .. } => None,
            Fp::Res { v, p } => Some(Fp::Res { v: pow_mod(v, p - 2, p), p }),
        }
    }

    fn supports(field: &FieldKind) -> bool {
        matches!(field, FieldKind::Prime { .. })
    }
}
