use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scale::ScaleFactor;

/// The characteristic of the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^k`.
    pub fn pow(self, k: u32) -> Result<u64> {
        self.0.checked_pow(k).ok_or(Error::Overflow)
    }

    /// The `k` with `q = p^k`, if any.
    pub fn log(self, q: u64) -> Option<u32> {
        if q == 0 {
            return None;
        }
        let mut k = 0;
        let mut r = q;
        while r.is_multiple_of(self.0) {
            r /= self.0;
            k += 1;
        }
        (r == 1).then_some(k)
    }

    /// Errors unless `q` is a power of this prime.
    pub fn check_power(self, q: u64) -> Result<u32> {
        self.log(q).ok_or(Error::NotPowerOf { q, p: self.0 })
    }

    /// `p, p^2, ..., p^k_max`.
    pub fn powers(self, k_max: u32) -> Result<Vec<u64>> {
        (1..=k_max).map(|k| self.pow(k)).collect()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parameters `(s, p, k)` of the mixed power `I^(s,q)` with `q = p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedPowerSpec {
    s: ScaleFactor,
    p: Prime,
    k: u32,
    q: u64,
}

impl MixedPowerSpec {
    pub fn new(s: ScaleFactor, p: Prime, k: u32) -> Result<Self> {
        s.require_at_least_one()?;
        let q = p.pow(k)?;
        Ok(MixedPowerSpec { s, p, k, q })
    }

    /// Builds the spec from `q` directly, checking that it is a power of `p`.
    pub fn with_q(s: ScaleFactor, p: Prime, q: u64) -> Result<Self> {
        let k = p.check_power(q)?;
        Self::new(s, p, k)
    }

    pub fn s(&self) -> &ScaleFactor {
        &self.s
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `ceil(s * q)`, the ordinary-power exponent.
    pub fn ordinary_exponent(&self) -> Result<u64> {
        self.s.ceil_mul(self.q)
    }
}
