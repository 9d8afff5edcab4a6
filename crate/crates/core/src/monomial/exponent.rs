use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Exponent vector of a monomial `x_1^{a_1} ... x_n^{a_n}`.
///
/// Ordering is lexicographic on the coordinates, which is the lex monomial
/// order with `x_1 > x_2 > ... > x_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ExponentVector(Box<[u64]>);

impl ExponentVector {
    pub fn new(coords: Vec<u64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::NoVariables);
        }
        Ok(ExponentVector(coords.into_boxed_slice()))
    }

    pub fn zeros(nvars: usize) -> Self {
        assert!(nvars >= 1, "monomials need at least one variable");
        ExponentVector(vec![0; nvars].into_boxed_slice())
    }

    /// `x_var^exp` in `nvars` variables.
    pub fn pure_power(nvars: usize, var: usize, exp: u64) -> Self {
        let mut v = vec![0; nvars];
        v[var] = exp;
        ExponentVector(v.into_boxed_slice())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Total degree.
    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn check_len(&self, nvars: usize) -> Result<()> {
        if self.len() == nvars {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: nvars, found: self.len() })
        }
    }

    /// Exponent vector of the product of the two monomials.
    pub fn checked_add(&self, other: &ExponentVector) -> Result<ExponentVector> {
        other.check_len(self.len())?;
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(|v| ExponentVector(v.into_boxed_slice()))
    }

    /// Exponent vector of `(x^self)^k`.
    pub fn checked_scale(&self, k: u64) -> Result<ExponentVector> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(|v| ExponentVector(v.into_boxed_slice()))
    }

    pub fn componentwise_min(&self, other: &ExponentVector) -> ExponentVector {
        let v: Vec<u64> = self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect();
        ExponentVector(v.into_boxed_slice())
    }

    pub fn componentwise_max(&self, other: &ExponentVector) -> ExponentVector {
        let v: Vec<u64> = self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect();
        ExponentVector(v.into_boxed_slice())
    }

    /// If this is a pure power `x_i^a` with `a > 0`, returns `(i, a)`.
    pub fn as_pure_power(&self) -> Option<(usize, u64)> {
        let mut found = None;
        for (i, &a) in self.0.iter().enumerate() {
            if a > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, a));
            }
        }
        found
    }
}

impl From<ExponentVector> for Vec<u64> {
    fn from(v: ExponentVector) -> Self {
        v.0.into_vec()
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand used throughout the tests.
#[macro_export]
macro_rules! ev {
    ($($a:expr),+ $(,)?) => {
        $crate::monomial::ExponentVector::new(vec![$($a as u64),+]).unwrap()
    };
}
