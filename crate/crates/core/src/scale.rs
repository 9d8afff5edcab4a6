//! Exact non-negative rational parameters (rational-power exponents and
//! closure parameters).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `a/b` with `a >= 0`, `b >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScaleFactor(BigRational);

impl ScaleFactor {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidRational(format!("{numer}/{denom}")));
        }
        Self::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: u64) -> Self {
        ScaleFactor(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn from_rational(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeScale(r.to_string()));
        }
        // BigRational::new already reduces and normalizes the sign.
        Ok(ScaleFactor(r))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Errors unless the value is at least 1.
    pub fn require_at_least_one(&self) -> Result<()> {
        if self.0 < BigRational::one() {
            Err(Error::ScaleBelowOne(self.to_string()))
        } else {
            Ok(())
        }
    }

    /// `ceil(self * c)` computed exactly.
    pub fn ceil_mul(&self, c: u64) -> Result<u64> {
        let prod = self.numer() * BigInt::from(c);
        let q = Integer::div_ceil(&prod, self.denom());
        q.to_u64().ok_or(Error::Overflow)
    }

    /// `floor(self * c)` computed exactly.
    pub fn floor_mul(&self, c: u64) -> Result<u64> {
        let prod = self.numer() * BigInt::from(c);
        let q = Integer::div_floor(&prod, self.denom());
        q.to_u64().ok_or(Error::Overflow)
    }

    /// `ceil(self)`.
    pub fn ceil(&self) -> Result<u64> {
        self.ceil_mul(1)
    }

    /// True iff `lhs >= self * c` for integers `lhs`, `c`.
    pub fn le_ratio(&self, lhs: u64, c: u64) -> bool {
        BigInt::from(lhs) * self.denom() >= self.numer() * BigInt::from(c)
    }

    pub fn mul(&self, other: &ScaleFactor) -> ScaleFactor {
        ScaleFactor(&self.0 * &other.0)
    }

    pub fn mul_int(&self, k: u64) -> ScaleFactor {
        ScaleFactor(&self.0 * BigRational::from_integer(k.into()))
    }

    pub fn add(&self, other: &ScaleFactor) -> ScaleFactor {
        ScaleFactor(&self.0 + &other.0)
    }

    /// `self - other`, clamped at zero.
    pub fn saturating_sub(&self, other: &ScaleFactor) -> ScaleFactor {
        let d = &self.0 - &other.0;
        if d.is_negative() {
            ScaleFactor(BigRational::zero())
        } else {
            ScaleFactor(d)
        }
    }

    /// Lossy conversion for reporting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ScaleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ScaleFactor {
    type Err = Error;

    /// Accepts `n` or `a/b` with decimal integers; floats and signs other
    /// than a leading `-` are rejected.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::InvalidRational(text.to_string());
        let parse_int = |s: &str| -> Result<BigInt> {
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse::<BigInt>().map_err(|_| bad())
        };
        let r = match t.split_once('/') {
            Some((a, b)) => {
                let n = parse_int(a.trim())?;
                let d = parse_int(b.trim())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(parse_int(t)?),
        };
        ScaleFactor::from_rational(r)
    }
}

impl Serialize for ScaleFactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
