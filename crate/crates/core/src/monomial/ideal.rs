use serde::Serialize;

use super::exponent::ExponentVector;
use super::spec::{MixedPowerSpec, Prime};
use crate::error::{Error, Result};

/// A monomial ideal, stored by its minimal generators.
///
/// Generators form an antichain under divisibility and are kept in
/// descending lex order. The empty generator list is the zero ideal; the
/// single zero vector is the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    pub fn zero(nvars: usize) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::NoVariables);
        }
        Ok(MonomialIdeal { nvars, gens: Vec::new() })
    }

    pub fn unit(nvars: usize) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::NoVariables);
        }
        Ok(MonomialIdeal { nvars, gens: vec![ExponentVector::zeros(nvars)] })
    }

    /// The ideal generated by `vectors`, minimalized.
    pub fn from_generators<I>(nvars: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        minimalize(nvars, vectors.into_iter().collect())
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(nvars: usize) -> Result<Self> {
        Self::from_generators(nvars, (0..nvars).map(|i| ExponentVector::pure_power(nvars, i, 1)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    pub fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else {
            Ok(())
        }
    }

    fn check_same(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.nvars, found: other.nvars })
        }
    }

    pub fn contains(&self, m: &ExponentVector) -> Result<bool> {
        m.check_len(self.nvars)?;
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let all = self.gens.iter().chain(other.gens.iter()).cloned().collect();
        minimalize(self.nvars, all)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let mut all = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                all.push(a.checked_add(b)?);
            }
        }
        minimalize(self.nvars, all)
    }

    /// `I^n`, with `I^0` the unit ideal.
    pub fn power(&self, n: u64) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal::unit(self.nvars)?;
        if n == 0 {
            return Ok(acc);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Multiplying by I one factor at a time keeps each product at
        // |I^k| * mu(I) candidates; squaring would cost |I^k|^2.
        acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I^[q]`, generated by the q-th powers of the generators.
    pub fn frobenius_power(&self, q: u64, p: Prime) -> Result<MonomialIdeal> {
        p.check_power(q)?;
        self.frobenius_unchecked(q)
    }

    pub(crate) fn frobenius_unchecked(&self, q: u64) -> Result<MonomialIdeal> {
        let gens = self.gens.iter().map(|g| g.checked_scale(q)).collect::<Result<Vec<_>>>()?;
        // Scaling preserves the antichain; only the empty/unit cases need no care.
        minimalize(self.nvars, gens)
    }

    /// `I^(s,q) = I^ceil(sq) + I^[q]`.
    pub fn mixed_power(&self, spec: &MixedPowerSpec) -> Result<MonomialIdeal> {
        self.require_nonzero()?;
        let ordinary = self.power(spec.ordinary_exponent()?)?;
        ordinary.sum(&self.frobenius_unchecked(spec.q())?)
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.gens.iter().all(|g| other.contains_unchecked(g)))
    }

    /// Ideal equality; canonical forms make this generator-list equality.
    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.gens == other.gens)
    }

    /// Componentwise maximum of the generators.
    pub fn max_exponents(&self) -> Option<ExponentVector> {
        let mut it = self.gens.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, g| acc.componentwise_max(g)))
    }

    /// Componentwise minimum of the generators.
    pub fn min_exponents(&self) -> Option<ExponentVector> {
        let mut it = self.gens.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, g| acc.componentwise_min(g)))
    }

    /// For each variable, the exponent of the pure-power generator, if present.
    pub fn pure_power_exponents(&self) -> Vec<Option<u64>> {
        let mut out = vec![None; self.nvars];
        for g in &self.gens {
            if let Some((i, a)) = g.as_pure_power() {
                out[i] = Some(a);
            }
        }
        if self.is_unit() {
            out.iter_mut().for_each(|o| *o = Some(0));
        }
        out
    }

    /// Primary to the maximal ideal iff a pure power of every variable is a
    /// minimal generator (or the ideal is the unit ideal).
    pub fn is_m_primary(&self) -> bool {
        self.pure_power_exponents().iter().all(Option::is_some)
    }

    /// Errors with the first variable lacking a pure power.
    pub fn require_m_primary(&self) -> Result<Vec<u64>> {
        self.pure_power_exponents()
            .into_iter()
            .enumerate()
            .map(|(var, a)| a.ok_or(Error::NotPrimary { var }))
            .collect()
    }
}

/// Minimal elements of `vectors` under componentwise order, in canonical
/// (descending lex) order.
pub fn minimalize(nvars: usize, mut vectors: Vec<ExponentVector>) -> Result<MonomialIdeal> {
    if nvars == 0 {
        return Err(Error::NoVariables);
    }
    for v in &vectors {
        v.check_len(nvars)?;
    }
    // After an ascending lex sort, anything dividing v (other than v) comes
    // before v, so one forward pass against the kept prefix suffices.
    vectors.sort_unstable();
    vectors.dedup();
    let mut kept = match nvars {
        1 => vectors.into_iter().take(1).collect(),
        2 => {
            let mut best = u64::MAX;
            let mut kept = Vec::new();
            for v in vectors {
                if v.get(1) < best {
                    best = v.get(1);
                    kept.push(v);
                }
            }
            kept
        }
        3 => minimal_3d(vectors),
        _ => {
            let mut kept: Vec<ExponentVector> = Vec::new();
            for v in vectors {
                if !kept.iter().any(|k| k.divides(&v)) {
                    kept.push(v);
                }
            }
            kept
        }
    };
    kept.reverse();
    Ok(MonomialIdeal { nvars, gens: kept })
}

/// Lex-sorted, deduplicated input. A point is dominated iff some earlier
/// point has second and third coordinates no larger; a Fenwick tree over
/// the second coordinate answers that as a prefix minimum of the third.
fn minimal_3d(sorted: Vec<ExponentVector>) -> Vec<ExponentVector> {
    let mut ys: Vec<u64> = sorted.iter().map(|v| v.get(1)).collect();
    ys.sort_unstable();
    ys.dedup();
    let mut tree = vec![u64::MAX; ys.len() + 1];
    let mut kept = Vec::new();
    for v in sorted {
        let idx = ys.partition_point(|&y| y <= v.get(1));
        let mut best = u64::MAX;
        let mut i = idx;
        while i > 0 {
            best = best.min(tree[i]);
            i &= i - 1;
        }
        if best <= v.get(2) {
            continue;
        }
        let mut i = idx;
        while i < tree.len() {
            tree[i] = tree[i].min(v.get(2));
            i += i & i.wrapping_neg();
        }
        kept.push(v);
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ev;
    use crate::testutil::*;
    use proptest::prelude::*;

    fn ideal(nvars: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(nvars, gens.iter().map(|g| ExponentVector::new(g.to_vec()).unwrap()))
            .unwrap()
    }

    #[test]
    fn minimalize_examples() {
        let i = ideal(2, &[&[3, 0], &[4, 1], &[0, 3]]);
        assert_eq!(i.generators(), &[ev![3, 0], ev![0, 3]]);
        assert_eq!(ideal(2, &[&[2, 2]]).generators(), &[ev![2, 2]]);
        assert_eq!(ideal(2, &[&[1, 0], &[0, 1], &[1, 1]]).generators(), &[ev![1, 0], ev![0, 1]]);
        assert!(minimalize(2, vec![ev![1, 0], ev![1, 0, 0]]).is_err());
        assert!(ideal(2, &[]).is_zero());
    }

    #[test]
    fn contains_examples() {
        let i = ideal(2, &[&[3, 0], &[0, 3]]);
        assert!(!i.contains(&ev![2, 2]).unwrap());
        assert!(i.contains(&ev![5, 1]).unwrap());
        assert!(!MonomialIdeal::zero(2).unwrap().contains(&ev![9, 9]).unwrap());
        assert!(i.contains(&ev![1]).is_err());
    }

    #[test]
    fn powers_and_products() {
        let i = ideal(2, &[&[3, 0], &[0, 3]]);
        // Degree-3 multisets of {(3,0),(0,3)}: (9,0),(6,3),(3,6),(0,9).
        assert_eq!(i.power(3).unwrap().generators(), &[ev![9, 0], ev![6, 3], ev![3, 6], ev![0, 9]]);
        assert_eq!(i.product(&MonomialIdeal::unit(2).unwrap()).unwrap(), i);
        assert_eq!(i.power(0).unwrap(), MonomialIdeal::unit(2).unwrap());
        let m = MonomialIdeal::maximal(2).unwrap();
        assert_eq!(m.power(2).unwrap().generators(), &[ev![2, 0], ev![1, 1], ev![0, 2]]);
        assert!(i.sum(&MonomialIdeal::maximal(3).unwrap()).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let two = Prime::new(2).unwrap();
        let i = ideal(2, &[&[3, 0], &[0, 3]]);
        assert_eq!(i.frobenius_power(2, two).unwrap().generators(), &[ev![6, 0], ev![0, 6]]);
        assert_eq!(i.frobenius_power(1, two).unwrap(), i);
        let m = MonomialIdeal::maximal(2).unwrap();
        assert_eq!(m.frobenius_power(4, two).unwrap().generators(), &[ev![4, 0], ev![0, 4]]);
        assert_eq!(i.frobenius_power(6, two), Err(Error::NotPowerOf { q: 6, p: 2 }));
    }

    #[test]
    fn mixed_power_examples() {
        let two = Prime::new(2).unwrap();
        let i = ideal(2, &[&[3, 0], &[0, 3]]);
        let spec = |s: &str| MixedPowerSpec::new(s.parse().unwrap(), two, 1).unwrap();
        assert_eq!(i.mixed_power(&spec("1")).unwrap().generators(), &[ev![6, 0], ev![3, 3], ev![0, 6]]);
        assert_eq!(i.mixed_power(&spec("3/2")).unwrap().generators(), &[ev![6, 0], ev![0, 6]]);
        let m = MonomialIdeal::maximal(2).unwrap();
        assert_eq!(m.mixed_power(&spec("5")).unwrap().generators(), &[ev![2, 0], ev![0, 2]]);
        assert_eq!(MonomialIdeal::zero(2).unwrap().mixed_power(&spec("1")), Err(Error::ZeroIdeal));
    }

    #[test]
    fn subset_examples() {
        let i = ideal(2, &[&[3, 0], &[0, 3]]);
        let m = MonomialIdeal::maximal(2).unwrap();
        assert!(i.is_subset(&i).unwrap());
        assert!(i.is_subset(&m).unwrap());
        assert!(!m.is_subset(&i).unwrap());
        assert!(i.equals(&i.clone()).unwrap());
    }

    #[test]
    fn primary_detection() {
        assert!(ideal(2, &[&[3, 0], &[1, 1], &[0, 3]]).is_m_primary());
        assert!(!ideal(2, &[&[3, 0], &[1, 1]]).is_m_primary());
        assert_eq!(ideal(3, &[&[3, 0, 0], &[0, 1, 0]]).require_m_primary(), Err(Error::NotPrimary { var: 2 }));
        assert_eq!(ideal(2, &[&[2, 0], &[0, 5]]).require_m_primary().unwrap(), vec![2, 5]);
    }

    fn naive_minimal(nvars: usize, vs: &[ExponentVector]) -> Vec<ExponentVector> {
        let mut out: Vec<ExponentVector> = vs
            .iter()
            .filter(|v| !vs.iter().any(|w| w != *v && w.divides(v)))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out.reverse();
        assert!(out.iter().all(|v| v.len() == nvars));
        out
    }

    proptest! {
        #[test]
        fn minimalize_matches_naive(n in 1usize..=4, raw in prop::collection::vec(prop::collection::vec(0u64..6, 4), 0..40)) {
            let vs: Vec<ExponentVector> = raw.into_iter().map(|v| ExponentVector::new(v[..n].to_vec()).unwrap()).collect();
            let fast = minimalize(n, vs.clone()).unwrap();
            let expected = naive_minimal(n, &vs);
            prop_assert_eq!(fast.generators(), expected.as_slice());
        }

        #[test]
        fn outputs_are_antichains(v in arb_ideals(2, 3, 4, 4)) {
            let (i, j) = (&v[0], &v[1]);
            for out in [i.sum(j).unwrap(), i.product(j).unwrap(), i.power(3).unwrap()] {
                for (k, g) in out.generators().iter().enumerate() {
                    let rest = out.generators().iter().enumerate().filter(|(l, _)| *l != k);
                    prop_assert!(!rest.into_iter().any(|(_, h)| h.divides(g)));
                }
            }
        }

        #[test]
        fn product_laws(v in arb_ideals(3, 3, 4, 3), a in 0u64..3, b in 0u64..3) {
            let (i, j, k) = (&v[0], &v[1], &v[2]);
            prop_assert_eq!(i.product(j).unwrap(), j.product(i).unwrap());
            prop_assert_eq!(i.product(j).unwrap().product(k).unwrap(), i.product(&j.product(k).unwrap()).unwrap());
            prop_assert_eq!(i.power(a + b).unwrap(), i.power(a).unwrap().product(&i.power(b).unwrap()).unwrap());
        }

        // I^ceil(h) ⊆ (I^[q])^floor(h/q - mu + 1) ⊆ (I^[q])^ceil(h/q - mu).
        #[test]
        fn ordinary_inside_frobenius_powers(i in arb_ideal(3, 4, 3), h in 1i64..=20, qi in 0usize..3) {
            let q = [2i64, 4, 8][qi];
            let mu = i.mu() as i64;
            let frob = i.frobenius_power(q as u64, Prime::new(2).unwrap()).unwrap();
            let lhs = i.power(h as u64).unwrap();
            // floor(h/q - mu + 1) and ceil(h/q - mu) with exact integer arithmetic.
            let lo = (h - mu * q + q).div_euclid(q);
            let hi = -((mu * q - h).div_euclid(q));
            if lo >= 0 {
                let mid = frob.power(lo as u64).unwrap();
                prop_assert!(lhs.is_subset(&mid).unwrap());
                if hi >= 0 {
                    prop_assert!(mid.is_subset(&frob.power(hi as u64).unwrap()).unwrap());
                }
            }
        }

        #[test]
        fn mixed_power_sandwich_and_monotonicity(i in arb_ideal(3, 4, 3), k in 0u32..3, a in 1i64..12, b in 1i64..12) {
            let two = Prime::new(2).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let t: crate::ScaleFactor = crate::ScaleFactor::new(4 + lo, 4).unwrap();
            let s: crate::ScaleFactor = crate::ScaleFactor::new(4 + hi, 4).unwrap();
            let st = MixedPowerSpec::new(t, two, k).unwrap();
            let ss = MixedPowerSpec::new(s, two, k).unwrap();
            let q = st.q();
            let mt = i.mixed_power(&st).unwrap();
            let ms = i.mixed_power(&ss).unwrap();
            prop_assert!(ms.is_subset(&mt).unwrap());
            prop_assert!(i.frobenius_power(q, two).unwrap().is_subset(&ms).unwrap());
            prop_assert!(mt.is_subset(&i.power(q).unwrap()).unwrap());
            let one = MixedPowerSpec::new(crate::ScaleFactor::one(), two, k).unwrap();
            prop_assert_eq!(i.mixed_power(&one).unwrap(), i.power(q).unwrap());
            let big = MixedPowerSpec::new(crate::ScaleFactor::integer(i.mu() as u64), two, k).unwrap();
            prop_assert_eq!(i.mixed_power(&big).unwrap(), i.frobenius_power(q, two).unwrap());
        }
    }
}
