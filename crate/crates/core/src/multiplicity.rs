//! Colengths of m-primary monomial ideals and finite-q sequences for the
//! s-multiplicity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::closure::weak_s_closure;
use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MixedPowerSpec, MonomialIdeal, Prime};
use crate::scale::ScaleFactor;

/// Volume of `{x in [0,1]^d : x_1 + ... + x_d <= s}`.
///
/// Inclusion–exclusion over the corners of the cube:
/// `(1/d!) sum_{k=0}^{floor s} (-1)^k C(d,k) (s-k)^d` for `s <= d`, and 1
/// beyond.
pub fn normalizer_hs(s: &ScaleFactor, d: u32) -> BigRational {
    assert!(d >= 1, "dimension must be positive");
    let dd = BigRational::from_integer(d.into());
    if *s.value() >= dd {
        return BigRational::one();
    }
    let top = s.floor_mul(1).expect("s < d fits");
    let mut sum = BigRational::zero();
    let mut binom = BigInt::one();
    for k in 0..=top {
        let base = s.value() - BigRational::from_integer(k.into());
        let term = BigRational::from_integer(binom.clone()) * num_traits::pow(base, d as usize);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * BigInt::from(d as u64 - k) / BigInt::from(k + 1);
    }
    let factorial: BigInt = (1..=d as u64).map(BigInt::from).product();
    sum / BigRational::from_integer(factorial)
}

/// Number of monomials outside the m-primary ideal `J`.
///
/// Every standard monomial lies in the box `v_i < a_i`, `a_i` the pure-power
/// exponents. Scanning the first `n - 1` coordinates of the box, the
/// standard monomials above a prefix are the last-coordinate values below
/// the least last exponent among generators whose prefix divides it.
pub fn colength(ideal: &MonomialIdeal) -> Result<u64> {
    let pure = ideal.require_m_primary()?;
    let n = ideal.nvars();
    let last = n - 1;
    let head = pure[0];
    // Partition by the leading coordinate.
    (0..head)
        .into_par_iter()
        .map(|lead| {
            let gens: Vec<&ExponentVector> = ideal.generators().iter().filter(|g| g.get(0) <= lead).collect();
            if n == 1 {
                return Ok(1);
            }
            let mut total = 0u64;
            let mut prefix = vec![0u64; last];
            prefix[0] = lead;
            loop {
                let bound = gens
                    .iter()
                    .filter(|g| (1..last).all(|i| g.get(i) <= prefix[i]))
                    .map(|g| g.get(last))
                    .min()
                    .expect("pure power of the last variable");
                total = total.checked_add(bound).ok_or(Error::Overflow)?;
                let mut i = 1;
                while i < last && prefix[i] + 1 == pure[i] {
                    prefix[i] = 0;
                    i += 1;
                }
                if i >= last {
                    break;
                }
                prefix[i] += 1;
            }
            Ok(total)
        })
        .try_reduce(|| 0, |a, b| a.checked_add(b).ok_or(Error::Overflow))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityRecord {
    pub q: u64,
    /// `lambda(R / I^(s,q))`.
    pub colength: u64,
    /// `colength / (q^d H_s(d))`.
    #[serde(serialize_with = "serialize_rational")]
    pub normalized: BigRational,
}

fn serialize_rational<S: serde::Serializer>(r: &BigRational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&r.to_string())
}

/// One record per `q = p, ..., p^k_max`.
pub fn s_multiplicity_sequence(
    ideal: &MonomialIdeal,
    s: &ScaleFactor,
    p: Prime,
    k_max: u32,
) -> Result<Vec<MultiplicityRecord>> {
    ideal.require_m_primary()?;
    s.require_at_least_one()?;
    if k_max < 2 {
        return Err(Error::TooFewExponents { min: 2, got: k_max });
    }
    let d = ideal.nvars() as u32;
    let h = normalizer_hs(s, d);
    (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let spec = MixedPowerSpec::new(s.clone(), p, k)?;
            let q = spec.q();
            let colength = colength(&ideal.mixed_power(&spec)?)?;
            let scale = BigRational::from_integer(num_traits::pow(BigInt::from(q), d as usize)) * &h;
            let normalized = BigRational::from_integer(colength.into()) / scale;
            Ok(MultiplicityRecord { q, colength, normalized })
        })
        .collect()
}

/// Richardson extrapolation of the last two records, assuming an error of
/// order `1/q`. An estimate only: the limit itself is never certified.
pub fn richardson_estimate(records: &[MultiplicityRecord]) -> Option<BigRational> {
    let [.., a, b] = records else { return None };
    let ratio = BigRational::new(b.q.into(), a.q.into());
    let one = BigRational::one();
    Some((&ratio * &b.normalized - &a.normalized) / (ratio - one))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyRow {
    pub q: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub normalized_i: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub normalized_j: BigRational,
    /// `q |normalized_i - normalized_j|`.
    pub scaled_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    /// The generator adjoined to form `J = I + (g)`; `None` when the
    /// closure adds nothing.
    pub adjoined: Option<ExponentVector>,
    pub rows: Vec<ConsistencyRow>,
    /// Fitted envelope constant: the largest `scaled_gap`.
    pub c: f64,
    pub c_limit: f64,
}

impl ConsistencyReport {
    pub fn passes(&self) -> bool {
        self.c <= self.c_limit
    }
}

/// Compares normalized sequences of `I` and `J = I + (g)` for a new
/// generator `g` of `wsc_s(I)`: both ideals have the same weak s-closure,
/// so their sequences should approach each other at rate `C/q`.
///
/// `g` defaults to the first new generator in canonical order. A closure
/// equal to `I` leaves nothing to compare and passes trivially.
pub fn closure_multiplicity_consistency(
    ideal: &MonomialIdeal,
    s: &ScaleFactor,
    p: Prime,
    k_max: u32,
    adjoin: Option<&ExponentVector>,
    c_limit: f64,
) -> Result<ConsistencyReport> {
    ideal.require_m_primary()?;
    let closure = weak_s_closure(ideal, s)?;
    let g = match adjoin {
        Some(g) => {
            g.check_len(ideal.nvars())?;
            if !closure.result.contains(g)? || ideal.contains(g)? {
                return Err(Error::NothingToAdjoin);
            }
            g.clone()
        }
        None => match closure.new_generators.first() {
            Some(g) => g.clone(),
            None => return Ok(ConsistencyReport { adjoined: None, rows: Vec::new(), c: 0.0, c_limit }),
        },
    };
    let j = ideal.sum(&MonomialIdeal::from_generators(ideal.nvars(), [g.clone()])?)?;
    let si = s_multiplicity_sequence(ideal, s, p, k_max)?;
    let sj = s_multiplicity_sequence(&j, s, p, k_max)?;
    let rows: Vec<ConsistencyRow> = si
        .into_iter()
        .zip(sj)
        .map(|(a, b)| {
            let gap = (&a.normalized - &b.normalized).abs() * BigRational::from_integer(a.q.into());
            ConsistencyRow {
                q: a.q,
                normalized_i: a.normalized,
                normalized_j: b.normalized,
                scaled_gap: gap.to_f64().unwrap_or(f64::INFINITY),
            }
        })
        .collect();
    let c = rows.iter().map(|r| r.scaled_gap).fold(0.0, f64::max);
    Ok(ConsistencyReport { adjoined: Some(g), rows, c, c_limit })
}
