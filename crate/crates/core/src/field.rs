//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// The ground field of every matrix, subspace and coalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field with a primality-checked modulus.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
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
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Maps a rational into this field; fails when the denominator vanishes mod p.
    pub fn from_rational(self, q: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rationals => Some(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let num = reduce_bigint(q.numer(), p);
                let den = reduce_bigint(q.denom(), p);
                let den = Scalar::Residue { value: den, modulus: p }.inv()?;
                Some(&Scalar::Residue { value: num, modulus: p } * &den)
            }
        }
    }

    /// Parses an exact coefficient such as `3/4`, `-2` or `5`.
    pub fn parse_scalar(self, text: &str) -> std::result::Result<Scalar, ScalarParseError> {
        let q = parse_rational(text)?;
        self.from_rational(&q)
            .ok_or_else(|| ScalarParseError::DenominatorVanishes(text.to_string(), self))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = String;

    /// Accepts `Q`, `Fp:7`, `F7` and `F_7`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(Field::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F_"))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| format!("unknown field `{s}` (expected Q or Fp:<prime>)"))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| format!("bad modulus `{digits}`"))?;
        Field::prime(p).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("floating-point literal `{0}` is not an exact coefficient")]
    Float(String),
    #[error("malformed coefficient `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("denominator of `{0}` vanishes in {1}")]
    DenominatorVanishes(String, Field),
}

fn parse_rational(text: &str) -> std::result::Result<BigRational, ScalarParseError> {
    let t = text.trim();
    if t.contains(['.', 'e', 'E']) && !t.is_empty() {
        return Err(ScalarParseError::Float(text.to_string()));
    }
    let malformed = || ScalarParseError::Malformed(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    if num.is_empty() || den.is_empty() || den.starts_with(['-', '+']) {
        return Err(malformed());
    }
    let num: BigInt = num.parse().map_err(|_| malformed())?;
    let den: BigInt = den.parse().map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(num, den))
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Binary operations between elements of different
/// fields panic; matrices and subspaces keep their entries in one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_check() {
        assert!(Field::prime(7).is_ok());
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert!(Field::prime(65521).is_ok());
    }

    #[test]
    fn parse_coefficients() {
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("3/4").unwrap().to_string(), "3/4");
        assert_eq!(q.parse_scalar("6/-8").unwrap_err(), ScalarParseError::Malformed("6/-8".into()));
        assert_eq!(q.parse_scalar("-6/8").unwrap().to_string(), "-3/4");
        assert_eq!(q.parse_scalar("4/2").unwrap().to_string(), "2");
        assert!(matches!(q.parse_scalar("0.5"), Err(ScalarParseError::Float(_))));
        assert!(matches!(q.parse_scalar("1/0"), Err(ScalarParseError::ZeroDenominator(_))));
        assert!(matches!(q.parse_scalar("x"), Err(ScalarParseError::Malformed(_))));

        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse_scalar("1/2").unwrap().to_string(), "4");
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert!(matches!(
            f7.parse_scalar("1/14"),
            Err(ScalarParseError::DenominatorVanishes(..))
        ));
    }

    #[test]
    fn field_names() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("Fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("Fp:8".parse::<Field>().is_err());
    }

    proptest! {
        #[test]
        fn rational_reciprocal(n in -1000i64..1000, d in 1i64..1000) {
            prop_assume!(n != 0);
            let a = Scalar::Rational(BigRational::new(n.into(), d.into()));
            let b = Scalar::Rational(BigRational::new(d.into(), n.into()));
            prop_assert!((&a * &b).is_one());
            prop_assert_eq!(a.inv().unwrap(), b);
        }

        #[test]
        fn fermat(x in 0i64..10_000, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101, 65521])) {
            let f = Field::prime(p).unwrap();
            let v = f.from_i64(x);
            prop_assert_eq!(v.pow(p), v.clone());
            if !v.is_zero() {
                prop_assert!((&v * &v.inv().unwrap()).is_one());
            }
        }
    }
}
