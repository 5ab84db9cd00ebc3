//! Exact coefficient fields: the rationals and prime fields `F_p` with `p` odd.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

/// Default prime used when no field is requested explicitly.
pub const DEFAULT_PRIME: u32 = 31991;

/// The coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// Builds `F_p`, rejecting `p = 2`, composites and moduli that do not fit 31 bits.
    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        if p == 2 {
            return Err(AlgebraError::CharacteristicTwo);
        }
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::InvalidField(alloc::format!("{p} is not an odd prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(Box::new(BigRational::zero())),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(Box::new(BigRational::from_integer(BigInt::from(n)))),
            Field::Prime(p) => {
                let m = i64::from(*p);
                Scalar::Modular { value: n.rem_euclid(m) as u32, modulus: *p }
            }
        }
    }

    /// Reduces an arbitrary-precision integer into the field.
    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(Box::new(BigRational::from_integer(n.clone()))),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let mut r = n % &m;
                if r.is_negative() {
                    r += &m;
                }
                Scalar::Modular { value: r.to_u32().unwrap_or(0), modulus: *p }
            }
        }
    }

    /// Parses the textual field tags `QQ` and `Fp:P` (also `ZZ/P`).
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("QQ") || t == "Q" {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("ZZ/"))
            .or_else(|| t.strip_prefix("GF:"))
            .ok_or_else(|| AlgebraError::InvalidField(t.to_string()))?;
        let p: u32 = digits
            .trim()
            .parse()
            .map_err(|_| AlgebraError::InvalidField(t.to_string()))?;
        Field::prime(p)
    }

    pub fn tag(&self) -> String {
        match self {
            Field::Rationals => "QQ".to_string(),
            Field::Prime(p) => alloc::format!("Fp:{p}"),
        }
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= u64::from(p) {
        if u64::from(p) % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`].
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed by
/// `BigRational`); modular values live in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Box<BigRational>),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a + &**b)),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                let s = (u64::from(*a) + u64::from(*b)) % u64::from(*modulus);
                Scalar::Modular { value: s as u32, modulus: *modulus }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(Box::new(-(&**a))),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a * &**b)),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                let s = (u64::from(*a) * u64::from(*b)) % u64::from(*modulus);
                Scalar::Modular { value: s as u32, modulus: *modulus }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(Box::new(a.recip())),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Symmetric integer representative, used for display of `F_p` values.
    pub fn to_signed_string(&self) -> String {
        match self {
            Scalar::Rational(r) => r.to_string(),
            Scalar::Modular { value, modulus } => {
                if *value > modulus / 2 {
                    alloc::format!("-{}", modulus - value)
                } else {
                    value.to_string()
                }
            }
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative_repr(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular { value, modulus } => *value > modulus / 2,
        }
    }
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (i64::from(p), i64::from(a));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(i64::from(p)) as u32
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_signed_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
