//! Finite-q check of the defining condition of the weak s-closure: some
//! monomial `c` has `c m^q` in `I^(s,q)` for every tested `q`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{minimalize, ExponentVector, MixedPowerSpec, MonomialIdeal, Prime};
use crate::scale::ScaleFactor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    MemberEvidence,
    NonMemberEvidence,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleWitness {
    /// For member evidence, a multiplier that works at every tested `q`;
    /// otherwise the largest multiplier tried.
    pub c: ExponentVector,
    pub checked_q: Vec<u64>,
    pub verdict: Verdict,
}

/// Whether `w` lies in `I^n`, without building the power.
///
/// Only generators dividing `w` can occur in a factorization, and partial
/// products of a factorization still divide `w`, so it suffices to grow the
/// minimal generators of `I^k` that divide `w`.
pub fn power_contains(ideal: &MonomialIdeal, n: u64, w: &ExponentVector) -> Result<bool> {
    w.check_len(ideal.nvars())?;
    if n == 0 {
        return Ok(true);
    }
    let usable: Vec<&ExponentVector> = ideal.generators().iter().filter(|g| g.divides(w)).collect();
    if usable.is_empty() {
        return Ok(false);
    }
    if usable.iter().any(|g| g.is_zero()) {
        return Ok(true);
    }
    let min_degree = usable.iter().map(|g| g.degree()).min().expect("nonempty");
    if n.checked_mul(min_degree).is_none_or(|d| d > w.degree()) {
        return Ok(false);
    }
    let mut layer: Vec<ExponentVector> = usable.iter().map(|g| (*g).clone()).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for a in &layer {
            for g in &usable {
                let b = a.checked_add(g)?;
                if b.divides(w) {
                    next.push(b);
                }
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        layer = minimalize(ideal.nvars(), next)?.generators().to_vec();
    }
    Ok(true)
}

/// `w` in `I^(s,q) = I^ceil(sq) + I^[q]`.
fn mixed_power_contains(ideal: &MonomialIdeal, spec: &MixedPowerSpec, w: &ExponentVector) -> Result<bool> {
    let q = spec.q();
    for g in ideal.generators() {
        if g.checked_scale(q)?.divides(w) {
            return Ok(true);
        }
    }
    power_contains(ideal, spec.ordinary_exponent()?, w)
}

/// Evidence for `x^m` being in `wsc_s(I)`, searching multipliers in
/// `[0, c_bound]^n` over `q = p, p^2, ..., p^k_max`.
///
/// Mixed powers are ideals, so when some `c` works every `c' >= c` does
/// too. The whole box is therefore decided by its top corner: member
/// evidence iff the corner passes at every `q`, non-member evidence iff it
/// fails at the largest `q`. For member evidence the reported `c` is
/// shrunk coordinate by coordinate while it keeps passing.
pub fn definition_oracle(
    ideal: &MonomialIdeal,
    s: &ScaleFactor,
    m: &ExponentVector,
    p: Prime,
    k_max: u32,
    c_bound: u64,
) -> Result<OracleWitness> {
    ideal.require_nonzero()?;
    m.check_len(ideal.nvars())?;
    s.require_at_least_one()?;
    if k_max < 2 {
        return Err(Error::TooFewExponents { min: 2, got: k_max });
    }
    let checked_q = p.powers(k_max)?;
    let specs = checked_q
        .iter()
        .map(|&q| MixedPowerSpec::with_q(s.clone(), p, q))
        .collect::<Result<Vec<_>>>()?;
    let scaled = checked_q.iter().map(|&q| m.checked_scale(q)).collect::<Result<Vec<_>>>()?;
    let passes_at = |c: &ExponentVector, k: usize| -> Result<bool> {
        mixed_power_contains(ideal, &specs[k], &c.checked_add(&scaled[k])?)
    };
    let passes_all = |c: &ExponentVector| -> Result<bool> {
        // Largest q first: it is the most selective.
        for k in (0..specs.len()).rev() {
            if !passes_at(c, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let corner = ExponentVector::new(vec![c_bound; ideal.nvars()])?;
    if !passes_at(&corner, specs.len() - 1)? {
        return Ok(OracleWitness { c: corner, checked_q, verdict: Verdict::NonMemberEvidence });
    }
    if !passes_all(&corner)? {
        return Ok(OracleWitness { c: corner, checked_q, verdict: Verdict::Inconclusive });
    }
    let mut c: Vec<u64> = corner.coords().to_vec();
    for i in 0..c.len() {
        // Least value of coordinate i that still passes, by bisection.
        let (mut lo, mut hi) = (0u64, c[i]);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let mut trial = c.clone();
            trial[i] = mid;
            if passes_all(&ExponentVector::new(trial)?)? {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        c[i] = hi;
    }
    Ok(OracleWitness { c: ExponentVector::new(c)?, checked_q, verdict: Verdict::MemberEvidence })
}
