//! Weak s-closure, iterated s-closure and s-jumping numbers.

mod bounds;
mod oracle;

pub use bounds::{
    briancon_skoda_check, collapse_bound, degree_bound_check, tight_closure_collapse, BSQuery, BSRow, CollapseReport, DegreeBounds,
    DegreeReport,
};
pub use oracle::{definition_oracle, power_contains, OracleWitness, Verdict};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::newton::NewtonPolyhedron;
use crate::scale::ScaleFactor;

/// `I*`. Polynomial rings are regular, and in a regular ring every ideal is
/// tightly closed.
pub fn tight_closure(ideal: &MonomialIdeal) -> MonomialIdeal {
    ideal.clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `I* + I_s` evaluated once.
    ClosedForm,
    /// Weak closure applied until a fixed point.
    Iterate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub input: MonomialIdeal,
    pub s: ScaleFactor,
    pub result: MonomialIdeal,
    /// Generators of `result` that are not generators of `input`.
    pub new_generators: Vec<ExponentVector>,
    pub iterations: u32,
    pub route: Route,
}

impl ClosureReport {
    fn new(input: &MonomialIdeal, s: &ScaleFactor, result: MonomialIdeal, iterations: u32, route: Route) -> Self {
        let new_generators =
            result.generators().iter().filter(|g| !input.generators().contains(g)).cloned().collect();
        ClosureReport { input: input.clone(), s: s.clone(), result, new_generators, iterations, route }
    }
}

/// `I* + I_s` for a polyhedron already built from `I`.
pub(crate) fn weak_closure_with(poly: &NewtonPolyhedron, s: &ScaleFactor) -> Result<MonomialIdeal> {
    tight_closure(poly.source()).sum(&poly.rational_power(s)?)
}

fn check_s(s: &ScaleFactor) -> Result<()> {
    s.require_at_least_one()
}

/// `wsc_s(I) = I* + I_s`.
pub fn weak_s_closure(ideal: &MonomialIdeal, s: &ScaleFactor) -> Result<ClosureReport> {
    ideal.require_nonzero()?;
    check_s(s)?;
    let poly = NewtonPolyhedron::new(ideal)?;
    let result = weak_closure_with(&poly, s)?;
    Ok(ClosureReport::new(ideal, s, result, 1, Route::ClosedForm))
}

/// Iterates the weak s-closure until it stabilizes.
///
/// `iterations` counts the applications that enlarged the ideal, and is at
/// least 1. A value above 1 would mean the weak s-closure is not idempotent
/// on this input.
pub fn s_closure(ideal: &MonomialIdeal, s: &ScaleFactor) -> Result<ClosureReport> {
    ideal.require_nonzero()?;
    check_s(s)?;
    let mut current = ideal.clone();
    let mut growing = 0u32;
    loop {
        let next = weak_closure_with(&NewtonPolyhedron::new(&current)?, s)?;
        if next == current {
            break;
        }
        growing += 1;
        current = next;
    }
    Ok(ClosureReport::new(ideal, s, current, growing.max(1), Route::Iterate))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpingNumber {
    pub s: ScaleFactor,
    /// `wsc_s(I)`.
    pub at: MonomialIdeal,
    /// `wsc_t(I)` for `t` slightly above `s`.
    pub after: MonomialIdeal,
}

/// Points `s` of `[lo, hi)` with `wsc_s(I) != wsc_t(I)` for every `t > s`.
///
/// `I_s` only depends on `ceil(s e)` with `e` the stabilization
/// denominator, so `s -> wsc_s(I)` is a non-increasing step function that
/// is constant on every interval `((j - 1)/e, j/e]`. A point is a jump iff
/// its closure differs from the closure at the next grid point above it.
/// Off-grid points, an off-grid `lo` included, are never jumps, and `hi`
/// itself is not examined.
pub fn jumping_numbers(ideal: &MonomialIdeal, lo: &ScaleFactor, hi: &ScaleFactor) -> Result<Vec<JumpingNumber>> {
    ideal.require_nonzero()?;
    check_s(lo)?;
    if lo >= hi {
        return Err(Error::InvalidRange(format!("expected lo < hi, got [{lo}, {hi}]")));
    }
    let poly = NewtonPolyhedron::new(ideal)?;
    let e = poly.stabilization_denominator();
    let grid = |j: u64| ScaleFactor::new(j as i64, e as i64);
    let first = lo.ceil_mul(e)?;
    let last = hi.ceil_mul(e)?;
    let mut candidates = Vec::new();
    if lo.floor_mul(e)? != first {
        candidates.push((lo.clone(), first));
    }
    for j in first..last {
        candidates.push((grid(j)?, j + 1));
    }

    candidates
        .into_par_iter()
        .map(|(s, next)| {
            let at = weak_closure_with(&poly, &s)?;
            let after = weak_closure_with(&poly, &grid(next)?)?;
            Ok((at != after).then_some(JumpingNumber { s, at, after }))
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ev;
    use crate::monomial::parse_ideal;
    use crate::newton::integral_closure;
    use crate::testutil::*;
    use proptest::prelude::*;

    fn sf(s: &str) -> ScaleFactor {
        s.parse().unwrap()
    }

    fn deg_at_least(d: u64) -> MonomialIdeal {
        MonomialIdeal::from_generators(2, (0..=d).map(|a| ev![a, d - a])).unwrap()
    }

    #[test]
    fn weak_closure_examples() {
        let i = parse_ideal("x^3, y^3", 2).unwrap();
        let r = weak_s_closure(&i, &sf("5/4")).unwrap();
        assert_eq!(r.result, i.sum(&deg_at_least(4)).unwrap());
        assert!(r.result.contains(&ev![2, 2]).unwrap());
        assert!(r.new_generators.contains(&ev![2, 2]));
        assert_eq!((r.iterations, r.route), (1, Route::ClosedForm));
        assert_eq!(weak_s_closure(&i, &sf("1")).unwrap().result, deg_at_least(3));
        let r = weak_s_closure(&i, &sf("2")).unwrap();
        assert_eq!(r.result, i);
        assert!(r.new_generators.is_empty());
        assert_eq!(weak_s_closure(&i, &sf("1/2")), Err(Error::ScaleBelowOne("1/2".into())));
        assert_eq!(weak_s_closure(&MonomialIdeal::zero(2).unwrap(), &sf("1")), Err(Error::ZeroIdeal));
    }

    #[test]
    fn s_closure_examples() {
        let i = parse_ideal("x^3, y^3", 2).unwrap();
        let r = s_closure(&i, &sf("5/4")).unwrap();
        assert_eq!(r.result, weak_s_closure(&i, &sf("5/4")).unwrap().result);
        assert_eq!((r.iterations, r.route), (1, Route::Iterate));
        let i = parse_ideal("x^2, x*y, y^3", 2).unwrap();
        let r = s_closure(&i, &sf("3/2")).unwrap();
        assert_eq!(r.iterations, 1);
        assert_eq!(weak_s_closure(&r.result, &sf("3/2")).unwrap().result, r.result);
        let r = s_closure(&i, &sf("1")).unwrap();
        assert_eq!(r.result, integral_closure(&i).unwrap());
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn jumping_number_examples() {
        let i = parse_ideal("x^3, y^3", 2).unwrap();
        let jumps = jumping_numbers(&i, &sf("1"), &sf("3")).unwrap();
        let at: Vec<ScaleFactor> = jumps.iter().map(|j| j.s.clone()).collect();
        assert_eq!(at, vec![sf("1"), sf("4/3")]);
        assert_eq!(jumps[0].at, deg_at_least(3));
        assert_eq!(jumps[0].after, i.sum(&deg_at_least(4)).unwrap());
        assert_eq!(jumps[1].after, i);

        let i = parse_ideal("x^5", 1).unwrap();
        assert!(jumping_numbers(&i, &sf("1"), &sf("7")).unwrap().is_empty());
        let i = parse_ideal("x, y", 2).unwrap();
        assert!(jumping_numbers(&i, &sf("1"), &sf("2")).unwrap().is_empty());
    }

    #[test]
    fn jumping_number_ranges() {
        let i = parse_ideal("x^3, y^3", 2).unwrap();
        // hi is never reported; an off-grid lo is never a jump.
        let at = |lo: &str, hi: &str| -> Vec<ScaleFactor> {
            jumping_numbers(&i, &sf(lo), &sf(hi)).unwrap().into_iter().map(|j| j.s).collect()
        };
        assert_eq!(at("1", "4/3"), vec![sf("1")]);
        assert_eq!(at("7/6", "2"), vec![sf("4/3")]);
        assert_eq!(at("4/3", "3/2"), vec![sf("4/3")]);
        assert!(at("3/2", "3").is_empty());
        assert!(matches!(jumping_numbers(&i, &sf("2"), &sf("2")), Err(Error::InvalidRange(_))));
        assert!(matches!(jumping_numbers(&i, &sf("1/2"), &sf("2")), Err(Error::ScaleBelowOne(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn weak_closure_special_values(i in arb_ideal(3, 5, 5)) {
            prop_assert_eq!(weak_s_closure(&i, &sf("1")).unwrap().result, integral_closure(&i).unwrap());
            let mu = ScaleFactor::integer(i.mu() as u64);
            prop_assert_eq!(weak_s_closure(&i, &mu).unwrap().result, i);
        }

        #[test]
        fn iterated_closure_of_weak_closure(i in arb_ideal(3, 5, 5), a in arb_s(8, 4), b in arb_s(8, 4)) {
            let (t, s) = if a <= b { (a, b) } else { (b, a) };
            let wt = weak_s_closure(&i, &t).unwrap().result;
            prop_assert_eq!(weak_s_closure(&wt, &s).unwrap().result, wt.clone());
            prop_assert_eq!(s_closure(&i, &t).unwrap().iterations, 1);
        }

        #[test]
        fn monotone_and_sandwiched(v in arb_ideals(2, 3, 5, 4), a in arb_s(8, 4), b in arb_s(8, 4)) {
            let (t, s) = if a <= b { (a, b) } else { (b, a) };
            let i = &v[0];
            let j = i.sum(&v[1]).unwrap();
            let ws = weak_s_closure(i, &s).unwrap().result;
            prop_assert!(ws.is_subset(&weak_s_closure(i, &t).unwrap().result).unwrap());
            prop_assert!(ws.is_subset(&weak_s_closure(&j, &s).unwrap().result).unwrap());
            prop_assert!(i.is_subset(&ws).unwrap());
            prop_assert!(ws.is_subset(&integral_closure(i).unwrap()).unwrap());
        }

        #[test]
        fn jumps_are_left_stable(i in arb_ideal(2, 5, 4), probe in 1i64..=9) {
            let poly = NewtonPolyhedron::new(&i).unwrap();
            let e = poly.stabilization_denominator() as i64;
            let jumps = jumping_numbers(&i, &sf("1"), &ScaleFactor::integer(i.mu() as u64 + 1)).unwrap();
            for j in &jumps {
                // t strictly between the previous grid point and the jump.
                let k = j.s.ceil_mul(e as u64).unwrap() as i64;
                if k <= e {
                    continue;
                }
                let t = ScaleFactor::new(10 * (k - 1) + probe, 10 * e).unwrap();
                prop_assert_eq!(weak_closure_with(&poly, &t).unwrap(), j.at.clone());
            }
        }

        #[test]
        fn constant_between_grid_points(i in arb_ideal(3, 4, 4), j in 0u64..12, probes in prop::collection::vec(1i64..=99, 3)) {
            let poly = NewtonPolyhedron::new(&i).unwrap();
            let e = poly.stabilization_denominator();
            let left = e + j;
            let right = ScaleFactor::new(left as i64 + 1, e as i64).unwrap();
            let expected = weak_closure_with(&poly, &right).unwrap();
            for p in probes {
                let t = ScaleFactor::new(100 * left as i64 + p, 100 * e as i64).unwrap();
                prop_assert_eq!(weak_closure_with(&poly, &t).unwrap(), expected.clone());
            }
        }
    }
}
