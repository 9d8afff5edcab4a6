//! Seeded random monomial ideals and a runner for the structural checks
//! behind `verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closure::{
    briancon_skoda_check, collapse_bound, degree_bound_check, jumping_numbers, s_closure, weak_s_closure, BSQuery,
};
use crate::error::Result;
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::newton::{integral_closure, NewtonPolyhedron};
use crate::scale::ScaleFactor;

pub const MAX_VARS: usize = 3;
pub const MAX_EXP: u64 = 5;
pub const MAX_GENS: usize = 4;

/// Parameters used by the closure checks.
pub const S_GRID: [&str; 5] = ["1", "9/8", "5/4", "3/2", "2"];

pub fn scale(text: &str) -> ScaleFactor {
    text.parse().expect("valid literal")
}

/// A nonzero proper ideal in at most three variables with exponents at most
/// 5. With probability 1/2 a pure power of every variable is added, making
/// it m-primary.
pub fn random_ideal(rng: &mut impl Rng) -> MonomialIdeal {
    let n = rng.gen_range(1..=MAX_VARS);
    let count = rng.gen_range(1..=MAX_GENS);
    let mut gens = Vec::with_capacity(count + n);
    while gens.len() < count {
        let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=MAX_EXP)).collect();
        if v.iter().any(|&a| a > 0) {
            gens.push(ExponentVector::new(v).expect("nonempty"));
        }
    }
    if rng.gen_bool(0.5) {
        for i in 0..n {
            gens.push(ExponentVector::pure_power(n, i, rng.gen_range(1..=MAX_EXP)));
        }
    }
    MonomialIdeal::from_generators(n, gens).expect("consistent lengths")
}

/// `count` ideals drawn from a ChaCha stream seeded with `seed`.
pub fn random_ideals(seed: u64, count: usize) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_ideal(&mut rng)).collect()
}

/// A rational in `[lo, hi]` with denominator at most `max_den`.
pub fn random_scale(rng: &mut impl Rng, lo: u64, hi: u64, max_den: u64) -> ScaleFactor {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(lo * den..=hi * den);
    ScaleFactor::new(num as i64, den as i64).expect("positive denominator")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    SpecialValues,
    Idempotence,
    BrianconSkoda,
    Collapse,
    Stabilization,
    JumpingNumbers,
    DegreeBounds,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::SpecialValues,
        Check::Idempotence,
        Check::BrianconSkoda,
        Check::Collapse,
        Check::Stabilization,
        Check::JumpingNumbers,
        Check::DegreeBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::SpecialValues => "special-values",
            Check::Idempotence => "idempotence",
            Check::BrianconSkoda => "briancon-skoda",
            Check::Collapse => "collapse",
            Check::Stabilization => "stabilization",
            Check::JumpingNumbers => "jumping-numbers",
            Check::DegreeBounds => "degree-bounds",
        }
    }

    pub fn from_name(name: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    /// Number of individual assertions evaluated.
    pub cases: u64,
    /// Descriptions of the failing cases.
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    cases: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, check: Check) -> CheckOutcome {
        CheckOutcome { check, cases: self.cases, failures: self.failures }
    }
}

/// Runs one check over every ideal. Randomized parameters come from a
/// stream seeded with `seed`, so outcomes are reproducible.
pub fn run_check(check: Check, ideals: &[MonomialIdeal], seed: u64) -> Result<CheckOutcome> {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5c10_5eed);
    for (k, i) in ideals.iter().enumerate() {
        let label = |extra: String| format!("ideal #{k} ({:?}): {extra}", i.generators());
        match check {
            Check::SpecialValues => {
                let one = weak_s_closure(i, &ScaleFactor::one())?.result;
                t.record(one == integral_closure(i)?, || label("wsc_1 != integral closure".into()));
                let mu = ScaleFactor::integer(i.mu() as u64);
                t.record(weak_s_closure(i, &mu)?.result == *i, || label("wsc_mu != I".into()));
            }
            Check::Idempotence => {
                for (a, ta) in S_GRID.iter().enumerate() {
                    let tt = scale(ta);
                    let wt = weak_s_closure(i, &tt)?.result;
                    for ss in &S_GRID[a + 1..] {
                        let again = weak_s_closure(&wt, &scale(ss))?.result;
                        t.record(again == wt, || label(format!("wsc_{ss}(wsc_{ta}) != wsc_{ta}")));
                    }
                    let iterations = s_closure(i, &tt)?.iterations;
                    t.record(iterations == 1, || label(format!("s = {ta}: {iterations} iterations")));
                }
            }
            Check::BrianconSkoda => {
                for (a, ta) in S_GRID.iter().enumerate() {
                    for ss in &S_GRID[a + 1..] {
                        let q = BSQuery::new(i.clone(), scale(ta), scale(ss), 4)?;
                        for row in briancon_skoda_check(&q)? {
                            t.record(row.holds, || label(format!("t = {ta}, s = {ss}, r = {}, n = {}", q.r, row.n)));
                        }
                    }
                }
            }
            Check::Collapse => {
                let poly = NewtonPolyhedron::new(i)?;
                for ss in ["9/8", "3/2", "2"] {
                    let s = scale(ss);
                    let bound = collapse_bound(i, &s)?;
                    let mut power = i.power(bound.max(1))?;
                    for n in bound.max(1)..=bound + 2 {
                        if n > bound.max(1) {
                            power = power.product(i)?;
                        }
                        let collapsed = poly.rational_power(&s.mul_int(n))?.is_subset(&power)?;
                        t.record(collapsed, || label(format!("s = {ss}: wsc_s(I^{n}) != I^{n}")));
                    }
                }
            }
            Check::Stabilization => {
                let poly = NewtonPolyhedron::new(i)?;
                let e = poly.stabilization_denominator();
                for _ in 0..50 {
                    let alpha = random_scale(&mut rng, 1, i.mu() as u64 + 1, 12);
                    let snapped = ScaleFactor::new(alpha.ceil_mul(e)? as i64, e as i64)?;
                    let same = poly.rational_power(&alpha)? == poly.rational_power(&snapped)?;
                    t.record(same, || label(format!("alpha = {alpha}, e = {e}")));
                }
            }
            Check::JumpingNumbers => {
                let poly = NewtonPolyhedron::new(i)?;
                let e = poly.stabilization_denominator() as i64;
                let hi = ScaleFactor::integer(i.mu() as u64 + 1);
                for j in jumping_numbers(i, &ScaleFactor::one(), &hi)? {
                    let k = j.s.ceil_mul(e as u64)? as i64;
                    if k <= e {
                        continue;
                    }
                    // A probe strictly between the previous grid point and the jump.
                    let probe = ScaleFactor::new(8 * (k - 1) + rng.gen_range(1..8), 8 * e)?;
                    let left = weak_s_closure(i, &probe)?.result;
                    t.record(left == j.at, || label(format!("not left-stable at {}", j.s)));
                }
            }
            Check::DegreeBounds => {
                if !i.is_m_primary() {
                    continue;
                }
                for ss in ["1", "5/4", "3/2"] {
                    let report = degree_bound_check(i, &scale(ss), true)?;
                    t.record(report.holds(), || label(format!("s = {ss}: degree bounds violated")));
                }
            }
        }
    }
    Ok(t.finish(check))
}
