//! Briançon–Skoda containments, collapse to the tight closure for high
//! powers, and degree bounds on closure generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::weak_closure_with;
use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::newton::NewtonPolyhedron;
use crate::scale::ScaleFactor;

/// `wsc_s(I^n)` from `NP(I)`, using `NP(I^n) = n NP(I)` so that
/// `(I^n)_s = I_{ns}`.
fn weak_closure_of_power(poly: &NewtonPolyhedron, power: &MonomialIdeal, n: u64, s: &ScaleFactor) -> Result<MonomialIdeal> {
    power.sum(&poly.rational_power(&s.mul_int(n))?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BSQuery {
    pub ideal: MonomialIdeal,
    pub t: ScaleFactor,
    pub s: ScaleFactor,
    pub n_max: u64,
    /// `ceil((mu - 1)(s - t) / (t (s - 1)))`.
    pub r: u64,
}

impl BSQuery {
    pub fn new(ideal: MonomialIdeal, t: ScaleFactor, s: ScaleFactor, n_max: u64) -> Result<Self> {
        ideal.require_nonzero()?;
        t.require_at_least_one()?;
        if t >= s {
            return Err(Error::InvalidRange(format!("expected t < s, got t = {t}, s = {s}")));
        }
        let mu = ScaleFactor::integer(ideal.mu() as u64 - 1);
        let num = mu.mul(&s.saturating_sub(&t));
        let den = t.mul(&s.saturating_sub(&ScaleFactor::one()));
        let r = Integer::div_ceil(&(num.numer() * den.denom()), &(num.denom() * den.numer()));
        let r = r.to_u64().ok_or(Error::Overflow)?;
        Ok(BSQuery { ideal, t, s, n_max, r })
    }

    /// Whether `r` meets the bound exactly: `r t (s - 1) >= (mu - 1)(s - t)`.
    pub fn bound_holds(&self) -> bool {
        let lhs = self.t.mul(&self.s.saturating_sub(&ScaleFactor::one())).mul_int(self.r);
        let rhs = ScaleFactor::integer(self.ideal.mu() as u64 - 1).mul(&self.s.saturating_sub(&self.t));
        lhs >= rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BSRow {
    pub n: u64,
    /// `wsc_t(I^{n+r})`.
    pub lhs: MonomialIdeal,
    /// `wsc_s(I^n)`.
    pub rhs: MonomialIdeal,
    pub holds: bool,
}

/// Checks `wsc_t(I^{n+r}) ⊆ wsc_s(I^n)` for `n = 1..=n_max`.
pub fn briancon_skoda_check(query: &BSQuery) -> Result<Vec<BSRow>> {
    let poly = NewtonPolyhedron::new(&query.ideal)?;
    let top = query.n_max + query.r;
    let mut powers = vec![MonomialIdeal::unit(query.ideal.nvars())?];
    for _ in 0..top {
        let next = powers.last().expect("nonempty").product(&query.ideal)?;
        powers.push(next);
    }
    (1..=query.n_max)
        .into_par_iter()
        .map(|n| {
            let big = n + query.r;
            let lhs = weak_closure_of_power(&poly, &powers[big as usize], big, &query.t)?;
            let rhs = weak_closure_of_power(&poly, &powers[n as usize], n, &query.s)?;
            let holds = lhs.is_subset(&rhs)?;
            Ok(BSRow { n, lhs, rhs, holds })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    /// `ceil((mu - 1) / (s - 1))`.
    pub bound: u64,
    /// Least `n` in `1..=max(bound, 1)` with `wsc_s(I^n) = I^n`.
    pub n: Option<u64>,
}

impl CollapseReport {
    pub fn within_bound(&self) -> bool {
        self.n.is_some()
    }
}

/// Searches for the least `n` with `wsc_s(I^n) = (I^n)* = I^n`, up to the
/// guaranteed bound. A bound of 0 (principal `I`) means collapse must
/// already hold at `n = 1`.
pub fn tight_closure_collapse(ideal: &MonomialIdeal, s: &ScaleFactor) -> Result<CollapseReport> {
    ideal.require_nonzero()?;
    if *s <= ScaleFactor::one() {
        return Err(Error::InvalidRange(format!("collapse needs s > 1, got {s}")));
    }
    let bound = collapse_bound(ideal, s)?;
    let poly = NewtonPolyhedron::new(ideal)?;
    let mut power = ideal.clone();
    for n in 1..=bound.max(1) {
        if n > 1 {
            power = power.product(ideal)?;
        }
        if poly.rational_power(&s.mul_int(n))?.is_subset(&power)? {
            return Ok(CollapseReport { bound, n: Some(n) });
        }
    }
    Ok(CollapseReport { bound, n: None })
}

/// `ceil((mu(I) - 1) / (s - 1))` for `s > 1`.
pub fn collapse_bound(ideal: &MonomialIdeal, s: &ScaleFactor) -> Result<u64> {
    let d = s.saturating_sub(&ScaleFactor::one());
    let num: BigInt = BigInt::from(ideal.mu() as u64 - 1) * d.denom();
    Integer::div_ceil(&num, d.numer()).to_u64().ok_or(Error::Overflow)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    pub delta_min: ExponentVector,
    pub delta_max: ExponentVector,
}

impl DegreeBounds {
    pub fn of(ideal: &MonomialIdeal) -> Result<Self> {
        ideal.require_nonzero()?;
        Ok(DegreeBounds {
            delta_min: ideal.min_exponents().expect("nonzero ideal"),
            delta_max: ideal.max_exponents().expect("nonzero ideal"),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub bounds: DegreeBounds,
    /// New generators `v` of `wsc_s(I)` failing `v >= s delta_min`.
    pub lower_violations: Vec<ExponentVector>,
    /// Monomials checked for the upper bound; `None` if that half was not run.
    pub upper_checked: Option<u64>,
    /// Monomials `v >= s delta_max` missing from `wsc_s(I)`.
    pub upper_violations: Vec<ExponentVector>,
}

impl DegreeReport {
    pub fn holds(&self) -> bool {
        self.lower_violations.is_empty() && self.upper_violations.is_empty()
    }
}

/// Lower bound: new generators of `wsc_s(I)` sit at or above
/// `s delta_min` componentwise. Upper bound (m-primary `I` only): every
/// nonzero `v >= s delta_max` is in `wsc_s(I)`, scanned over the box
/// `[0, ceil(s delta_max_i) + 2]`.
///
/// The upper half runs when `I` is m-primary; with `require_upper` a
/// non-primary ideal is an error instead of a skip.
pub fn degree_bound_check(ideal: &MonomialIdeal, s: &ScaleFactor, require_upper: bool) -> Result<DegreeReport> {
    let bounds = DegreeBounds::of(ideal)?;
    s.require_at_least_one()?;
    let primary = match ideal.require_m_primary() {
        Ok(_) => true,
        Err(e) if require_upper => return Err(e),
        Err(_) => false,
    };
    let poly = NewtonPolyhedron::new(ideal)?;
    let closure = weak_closure_with(&poly, s)?;
    let lower_violations = closure
        .generators()
        .iter()
        .filter(|v| !ideal.generators().contains(v))
        .filter(|v| bounds.delta_min.coords().iter().zip(v.coords()).any(|(&d, &x)| !s.le_ratio(x, d)))
        .cloned()
        .collect();

    let (mut upper_checked, mut upper_violations) = (None, Vec::new());
    if primary {
        let lows: Vec<u64> =
            bounds.delta_max.coords().iter().map(|&d| s.ceil_mul(d)).collect::<Result<Vec<_>>>()?;
        let mut checked = 0u64;
        let mut point = lows.clone();
        loop {
            let v = ExponentVector::new(point.clone())?;
            if !v.is_zero() {
                checked += 1;
                if !closure.contains(&v)? {
                    upper_violations.push(v);
                }
            }
            // Odometer over [low_i, low_i + 2].
            let mut i = 0;
            while i < point.len() && point[i] == lows[i] + 2 {
                point[i] = lows[i];
                i += 1;
            }
            if i == point.len() {
                break;
            }
            point[i] += 1;
        }
        upper_checked = Some(checked);
    }
    Ok(DegreeReport { bounds, lower_violations, upper_checked, upper_violations })
}
