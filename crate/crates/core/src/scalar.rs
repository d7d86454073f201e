//! Exact field elements: arbitrary-precision rationals and residues modulo a
//! small prime.
//!
//! Every [`Scalar`] carries its field. Combining scalars from different fields
//! through the checked API ([`arith`], [`Scalar::try_add`], ...) yields
//! [`ScalarError::FieldMismatch`]; the operator impls (`+`, `-`, `*`) treat a
//! mismatch as a bug and panic. All values of an algebra share one field, so
//! library internals use the operators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid literal {literal:?}: {reason}")]
    BadLiteral { literal: String, reason: String },
}

/// The field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field of order `p`. Primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            Field::Prime(p) => Scalar::Prime {
                residue: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        self.from_i64(num).try_div(&self.from_i64(den))
    }

    /// Parses a value literal: optional sign, integer, optional `/` and a
    /// positive integer. Prime fields accept plain integers only, reduced
    /// modulo `p`.
    pub fn parse(self, literal: &str) -> Result<Scalar, ScalarError> {
        let bad = |reason: &str| ScalarError::BadLiteral {
            literal: literal.to_string(),
            reason: reason.to_string(),
        };
        let s = literal.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numerator = parse_signed_integer(num).ok_or_else(|| bad("malformed integer"))?;
        match self {
            Field::Rational => {
                let denominator = match den {
                    None => BigInt::one(),
                    Some(d) => {
                        if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                            return Err(bad("denominator must be a positive integer"));
                        }
                        let d: BigInt = d.parse().map_err(|_| bad("malformed denominator"))?;
                        if d.is_zero() {
                            return Err(bad("zero denominator"));
                        }
                        d
                    }
                };
                Ok(Scalar::Rational(BigRational::new(numerator, denominator)))
            }
            Field::Prime(p) => {
                if den.is_some() {
                    return Err(bad("prime-field literals must be integers"));
                }
                let m = BigInt::from(p);
                let r = ((numerator % &m) + &m) % &m;
                Ok(Scalar::Prime {
                    residue: r.to_u64().expect("residue below modulus"),
                    modulus: p,
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let bad = || ScalarError::BadLiteral {
            literal: s.to_string(),
            reason: "expected \"Q\" or \"Fp:<prime>\"".to_string(),
        };
        let p = s.strip_prefix("Fp:").ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        Field::prime(p)
    }
}

fn parse_signed_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.strip_prefix('+').unwrap_or(s).parse().ok()
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact element of a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Canonical rational: reduced, positive denominator.
    Rational(BigRational),
    /// Residue in `[0, modulus)`.
    Prime { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Prime { residue: a, modulus },
                Scalar::Prime { residue: b, .. },
            ) => Scalar::Prime {
                residue: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Prime { residue: a, modulus },
                Scalar::Prime { residue: b, .. },
            ) => Scalar::Prime {
                residue: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: pow_mod(*residue, *modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: (*modulus - *residue) % *modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Prime { .. } => None,
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128 % m as u128;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar field mismatch")
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$checked(rhs).expect("scalar field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// Field operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Checked field arithmetic. Unary operations ignore `b`.
pub fn arith(op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar, ScalarError> {
    let rhs = || b.expect("binary operation requires a second operand");
    match op {
        ArithOp::Add => a.try_add(rhs()),
        ArithOp::Sub => a.try_sub(rhs()),
        ArithOp::Mul => a.try_mul(rhs()),
        ArithOp::Div => a.try_div(rhs()),
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rational.ratio(n, d).unwrap()
    }

    #[test]
    fn rational_add() {
        assert_eq!(arith(ArithOp::Add, &q(1, 2), Some(&q(1, 3))).unwrap(), q(5, 6));
    }

    #[test]
    fn inverse_of_zero() {
        let z = Field::Rational.zero();
        assert_eq!(arith(ArithOp::Inv, &z, None), Err(ScalarError::DivisionByZero));
        let z5 = Field::Prime(5).zero();
        assert_eq!(z5.inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn modular_mul() {
        let f5 = Field::prime(5).unwrap();
        let p = arith(ArithOp::Mul, &f5.from_i64(3), Some(&f5.from_i64(4))).unwrap();
        assert_eq!(p, f5.from_i64(2));
        assert_eq!(f5.from_i64(3).inv().unwrap(), f5.from_i64(2));
    }

    #[test]
    fn mismatch() {
        let f5 = Field::Prime(5);
        let err = q(1, 2).try_add(&f5.one()).unwrap_err();
        assert_eq!(err, ScalarError::FieldMismatch(Field::Rational, f5));
    }

    #[test]
    fn primality() {
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(2).is_ok());
        assert_eq!(Field::prime(9), Err(ScalarError::NotPrime(9)));
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn literals() {
        let f = Field::Rational;
        assert_eq!(f.parse("-1/4").unwrap(), q(-1, 4));
        assert_eq!(f.parse("3").unwrap(), q(3, 1));
        assert_eq!(f.parse("+2/4").unwrap(), q(1, 2));
        assert!(f.parse("6/-3").is_err());
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("0.5").is_err());
        assert!(f.parse("").is_err());
        assert!(f.parse("--1").is_err());
        let f7 = Field::Prime(7);
        assert_eq!(f7.parse("-1").unwrap(), f7.from_i64(6));
        assert_eq!(f7.parse("23").unwrap(), f7.from_i64(2));
        assert!(f7.parse("1/2").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(-1, 4).to_string(), "-1/4");
        assert_eq!(q(6, 3).to_string(), "2");
        assert_eq!(Field::Prime(5).from_i64(-1).to_string(), "4");
        assert_eq!("Fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("Fp:8".parse::<Field>().is_err());
    }
}
