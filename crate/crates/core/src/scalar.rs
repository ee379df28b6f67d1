//! Exact field arithmetic over the rationals and odd prime fields.
//!
//! A [`Scalar`] carries its field with it; every value is kept in canonical
//! form (lowest terms with a positive denominator, or a residue in `[0, p)`),
//! so structural equality is mathematical equality.
//!
//! The `checked_*` methods report a [`Error::FieldMismatch`] when the operands
//! live in different fields. The operator impls (`+`, `-`, `*`, `/`) are the
//! fast path used by the linear algebra engine, where all entries of a matrix
//! share one field; they panic on mismatch.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_q::Rational;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Rationals,
    Prime(u64),
}

/// The field a scalar lives in: `Q` or `GF(p)` for an odd prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec(Kind::Rationals);

    pub fn rationals() -> Self {
        Self::RATIONALS
    }

    /// Prime field `GF(p)`. Rejects 2, composites and moduli that do not fit
    /// in 32 bits (residue products must fit in a `u64`).
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldSpec(Kind::Prime(p)))
    }

    /// 0 for `Q`, `p` for `GF(p)`.
    pub fn characteristic(&self) -> u64 {
        match self.0 {
            Kind::Rationals => 0,
            Kind::Prime(p) => p,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0, Kind::Rationals)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(p),
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn from_i64(&self, value: i64) -> Scalar {
        Scalar::from_i64(*self, value)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rationals => f.write_str("Q"),
            Kind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::RATIONALS);
        }
        let modulus = s
            .strip_prefix("GF(")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|digits| digits.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::UnknownField(s.to_string()))?;
        FieldSpec::prime(modulus)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(Rational),
    Residue { value: u64, modulus: u64 },
}

/// An exact element of `Q` or `GF(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field.0 {
            Kind::Rationals => Scalar(Repr::Rational(Rational::ZERO)),
            Kind::Prime(modulus) => Scalar(Repr::Residue { value: 0, modulus }),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        match field.0 {
            Kind::Rationals => Scalar(Repr::Rational(Rational::ONE)),
            Kind::Prime(modulus) => Scalar(Repr::Residue { value: 1, modulus }),
        }
    }

    pub fn from_i64(field: FieldSpec, value: i64) -> Self {
        match field.0 {
            Kind::Rationals => Scalar(Repr::Rational(Rational::from(value))),
            Kind::Prime(modulus) => Scalar(Repr::Residue {
                value: reduce_i64(value, modulus),
                modulus,
            }),
        }
    }

    /// `numerator / denominator` reduced to canonical form. In `GF(p)` this is
    /// `numerator · denominator⁻¹`.
    pub fn from_ratio(field: FieldSpec, numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::DivisionByZero);
        }
        match field.0 {
            Kind::Rationals => Ok(Scalar(Repr::Rational(Rational::from_signeds(
                numerator,
                denominator,
            )))),
            Kind::Prime(_) => Scalar::from_i64(field, numerator)
                .checked_div(&Scalar::from_i64(field, denominator)),
        }
    }

    /// Parses an integer literal, or `a/b` over `Q`.
    pub fn parse(field: FieldSpec, literal: &str) -> Result<Self> {
        let invalid = || Error::InvalidScalar {
            literal: literal.to_string(),
            field,
        };
        let text = literal.trim();
        match field.0 {
            Kind::Rationals => {
                if text.is_empty() || text.contains(char::is_whitespace) {
                    return Err(invalid());
                }
                if let Some((_, den)) = text.split_once('/') {
                    if den.trim_start_matches('+').chars().all(|c| c == '0') {
                        return Err(Error::DivisionByZero);
                    }
                }
                Rational::from_str(text)
                    .map(|r| Scalar(Repr::Rational(r)))
                    .map_err(|_| invalid())
            }
            Kind::Prime(modulus) => {
                let (negative, digits) = match text.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, text.strip_prefix('+').unwrap_or(text)),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(invalid());
                }
                // Reduce digit by digit so arbitrarily long literals are accepted.
                let mut value = 0u64;
                for b in digits.bytes() {
                    value = (value * 10 + u64::from(b - b'0')) % modulus;
                }
                if negative && value != 0 {
                    value = modulus - value;
                }
                Ok(Scalar(Repr::Residue { value, modulus }))
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self.0 {
            Repr::Rational(_) => FieldSpec::RATIONALS,
            Repr::Residue { modulus, .. } => FieldSpec(Kind::Prime(modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => *r == Rational::ZERO,
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => *r == Rational::ONE,
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    /// Returns the residue for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(value),
        }
    }

    /// Rebuilds the scalar from its canonical parts. Always equal to `self`.
    pub fn canonical(&self) -> Self {
        match &self.0 {
            Repr::Rational(r) => {
                let (n, d) = r.to_numerator_and_denominator();
                Scalar(Repr::Rational(Rational::from_sign_and_naturals(
                    *r >= Rational::ZERO,
                    n,
                    d,
                )))
            }
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: value % modulus,
                modulus: *modulus,
            }),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        let (left, right) = (self.field(), other.field());
        if left == right {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left, right })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * &other.inv()?)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(r.reciprocal())),
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        })
    }
}

fn reduce_i64(value: i64, modulus: u64) -> u64 {
    i128::from(value).rem_euclid(i128::from(modulus)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

#[cold]
fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            (
                Repr::Residue { value: a, modulus },
                Repr::Residue {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Scalar(Repr::Residue {
                value: (a + b) % modulus,
                modulus: *modulus,
            }),
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a - b)),
            (
                Repr::Residue { value: a, modulus },
                Repr::Residue {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Scalar(Repr::Residue {
                value: (a + modulus - b) % modulus,
                modulus: *modulus,
            }),
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            (
                Repr::Residue { value: a, modulus },
                Repr::Residue {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => Scalar(Repr::Residue {
                value: a * b % modulus,
                modulus: *modulus,
            }),
            _ => mismatch(self, rhs),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;

    /// Panics on division by zero or field mismatch.
    fn div(self, rhs: &Scalar) -> Scalar {
        match self.checked_div(rhs) {
            Ok(q) => q,
            Err(Error::DivisionByZero) => panic!("division by zero"),
            Err(_) => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(a) => Scalar(Repr::Rational(-a)),
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => write!(f, "{r}"),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}
