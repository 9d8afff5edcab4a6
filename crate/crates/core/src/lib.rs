//! Exact s-closures of monomial ideals in polynomial rings over a field of
//! positive characteristic.
//!
//! For a monomial ideal `I` and rational `s >= 1`, the weak s-closure is
//! `I + I_s`, where `I_s` is the rational power cut out by the scaled Newton
//! polyhedron `s * NP(I)`. Everything is computed with exact integer and
//! rational arithmetic.

pub mod closure;
pub mod error;
pub mod monomial;
pub mod multiplicity;
pub mod newton;
pub mod scale;
pub mod suite;

#[cfg(test)]
mod testutil;

pub use error::{Error, ErrorClass, Result};
pub use monomial::{ExponentVector, MixedPowerSpec, MonomialIdeal, Prime, VarNames};
pub use scale::ScaleFactor;
