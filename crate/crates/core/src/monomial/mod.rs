//! Monomials, monomial ideals and their powers.

mod exponent;
mod ideal;
mod spec;
mod text;

pub use exponent::ExponentVector;
pub use ideal::{minimalize, MonomialIdeal};
pub use spec::{MixedPowerSpec, Prime};
pub use text::{format_ideal, format_monomial, parse_ideal, parse_ideal_with, parse_monomial_text, VarNames};
