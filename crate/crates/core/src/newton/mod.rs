//! Newton polyhedra of monomial ideals, integral closures and rational
//! powers.
//!
//! `NP(I) = conv(exponents of I) + R_{>=0}^n` is stored as its facet
//! inequalities `<h, x> >= c` with `h >= 0` primitive and `c > 0`; the
//! coordinate inequalities `x_i >= 0` are implicit. The lattice points of
//! `alpha * NP(I)` generate the rational power `I_alpha`, and for
//! `alpha = 1` the integral closure.

mod elimination;
pub mod lp;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::scale::ScaleFactor;

use elimination::{project_hull, rank};

/// The inequality `<normal, x> >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub rhs: u64,
}

impl Facet {
    pub fn value(&self, v: &ExponentVector) -> u64 {
        self.normal.iter().zip(v.coords()).map(|(h, x)| h * x).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolyhedron {
    nvars: usize,
    facets: Vec<Facet>,
    vertices: Vec<ExponentVector>,
    #[serde(skip)]
    source: MonomialIdeal,
}

impl NewtonPolyhedron {
    /// Facet description of `NP(I)`.
    ///
    /// Built incrementally: the hull of a working vertex set is projected
    /// by Fourier–Motzkin elimination, and a generator is added to the set
    /// only when it violates a current facet. After every projection the
    /// working set is pruned back to actual vertices, so eliminations stay
    /// small even for high powers of an ideal.
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        ideal.require_nonzero()?;
        let n = ideal.nvars();
        if ideal.is_unit() {
            return Ok(NewtonPolyhedron {
                nvars: n,
                facets: Vec::new(),
                vertices: ideal.generators().to_vec(),
                source: ideal.clone(),
            });
        }
        let mut order: Vec<&ExponentVector> = ideal.generators().iter().collect();
        order.sort_by_key(|g| (g.degree(), (*g).clone()));

        // Seed with a coordinate-wise extreme generator for each variable.
        let mut working: Vec<ExponentVector> = Vec::new();
        for i in 0..n {
            let g = order.iter().min_by_key(|g| (g.get(i), g.degree())).expect("nonzero ideal");
            if !working.contains(g) {
                working.push((*g).clone());
            }
        }
        let mut facets = hull_facets(n, &working)?;
        working = vertices_of(n, &working, &facets)?;
        for g in order {
            if facets.iter().any(|f| f.value(g) < f.rhs) {
                working.push(g.clone());
                facets = hull_facets(n, &working)?;
                working = vertices_of(n, &working, &facets)?;
            }
        }
        working.sort_unstable_by(|a, b| b.cmp(a));
        Ok(NewtonPolyhedron { nvars: n, facets, vertices: working, source: ideal.clone() })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Vertices of the polyhedron; a subset of the source generators.
    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn source(&self) -> &MonomialIdeal {
        &self.source
    }

    /// Whether `v` lies in `alpha * NP(I)`.
    pub fn scaled_membership(&self, v: &ExponentVector, alpha: &ScaleFactor) -> Result<bool> {
        v.check_len(self.nvars)?;
        Ok(self.facets.iter().all(|f| alpha.le_ratio(f.value(v), f.rhs)))
    }

    pub fn contains(&self, v: &ExponentVector) -> Result<bool> {
        self.scaled_membership(v, &ScaleFactor::one())
    }

    /// Least common multiple of the facet right-hand sides (1 if there are
    /// none).
    ///
    /// With `e` this value, `I_alpha = I_{ceil(alpha e)/e}` for every
    /// rational `alpha >= 0`: a lattice point satisfies `<h, v> >= alpha c`
    /// iff `<h, v> >= ceil(alpha c)`, and since `c` divides `e`,
    /// `ceil(alpha c) = ceil(ceil(alpha e) c / e)`.
    pub fn stabilization_denominator(&self) -> u64 {
        self.facets.iter().fold(1u64, |acc, f| acc.lcm(&f.rhs))
    }

    /// Integer thresholds `ceil(alpha * c_j)`, one per facet.
    fn thresholds(&self, alpha: &ScaleFactor) -> Result<Vec<u64>> {
        self.facets.iter().map(|f| alpha.ceil_mul(f.rhs)).collect()
    }

    /// Minimal lattice points of `alpha * NP(I)`, as an ideal.
    ///
    /// Only the box `v_i <= ceil(alpha * G_i)` is searched, `G_i` being the
    /// largest i-th exponent among the generators. That suffices: if `v` is
    /// in `alpha * NP` then `v >= alpha * sum lambda_j g_j` for a convex
    /// combination, whose i-th coordinate is at most `alpha * G_i`; so when
    /// `v_i > ceil(alpha * G_i)`, `v - e_i` is still a member and `v` is not
    /// minimal.
    ///
    /// For each point `p` of the box in the first `n - 1` coordinates the
    /// least feasible last coordinate `f(p)` follows from the facets
    /// directly. `f` is non-increasing, and `(p, f(p))` is minimal iff
    /// `f(p - e_i) > f(p)` for every `i` with `p_i > 0`.
    pub fn rational_power(&self, alpha: &ScaleFactor) -> Result<MonomialIdeal> {
        let n = self.nvars;
        if self.facets.is_empty() || alpha.is_zero() {
            return MonomialIdeal::unit(n);
        }
        let thresholds = self.thresholds(alpha)?;
        let maxes = self.source.max_exponents().expect("nonzero ideal");
        let bounds: Vec<u64> =
            (0..n - 1).map(|i| alpha.ceil_mul(maxes.get(i))).collect::<Result<Vec<_>>>()?;
        let dims: Vec<usize> = bounds.iter().map(|&b| b as usize + 1).collect();
        let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).ok_or(Error::Overflow)?;
        if total > 50_000_000 {
            return Err(Error::TooLarge(format!("rational-power box of {total} points")));
        }
        let strides: Vec<usize> = {
            let mut s = vec![1usize; n - 1];
            for i in (0..n.saturating_sub(2)).rev() {
                s[i] = s[i + 1] * dims[i + 1];
            }
            s
        };

        let last = n - 1;
        let mut least = vec![u64::MAX; total];
        let mut prefix = vec![0u64; n - 1];
        for (idx, slot) in least.iter_mut().enumerate() {
            let mut rem = idx;
            for i in 0..n - 1 {
                prefix[i] = (rem / strides[i]) as u64;
                rem %= strides[i];
            }
            *slot = self.least_last(&prefix, last, &thresholds);
        }

        let mut gens = Vec::new();
        for (idx, &f) in least.iter().enumerate() {
            if f == u64::MAX {
                continue;
            }
            let mut rem = idx;
            let mut minimal = true;
            let mut coords = Vec::with_capacity(n);
            for i in 0..n - 1 {
                let c = rem / strides[i];
                rem %= strides[i];
                coords.push(c as u64);
                if c > 0 && least[idx - strides[i]] <= f {
                    minimal = false;
                }
            }
            if minimal {
                coords.push(f);
                gens.push(ExponentVector::new(coords)?);
            }
        }
        MonomialIdeal::from_generators(n, gens)
    }

    /// Least `x_last` with `(prefix, x_last)` satisfying every facet, or
    /// `u64::MAX` if none does.
    fn least_last(&self, prefix: &[u64], last: usize, thresholds: &[u64]) -> u64 {
        let mut need = 0u64;
        for (f, &t) in self.facets.iter().zip(thresholds) {
            let partial: u64 = f.normal[..last].iter().zip(prefix).map(|(h, x)| h * x).sum();
            if partial >= t {
                continue;
            }
            let h = f.normal[last];
            if h == 0 {
                return u64::MAX;
            }
            need = need.max((t - partial).div_ceil(h));
        }
        need
    }
}

/// Facets of `conv(points) + R_{>=0}^n`, sorted.
fn hull_facets(n: usize, points: &[ExponentVector]) -> Result<Vec<Facet>> {
    let mut out: Vec<Facet> = Vec::new();
    for (a, _) in project_hull(n, points)? {
        if a.iter().any(|&c| c < 0) {
            continue;
        }
        let g = a.iter().fold(0i128, |g, &c| g.gcd(&c));
        let normal: Vec<u64> = a.iter().map(|&c| (c / g) as u64).collect();
        let support = |p: &ExponentVector| -> u64 { normal.iter().zip(p.coords()).map(|(h, x)| h * x).sum() };
        let rhs = points.iter().map(support).min().expect("nonempty");
        if rhs == 0 {
            continue;
        }
        let facet = Facet { normal, rhs };
        if !out.contains(&facet) && is_facet(n, points, &facet)? {
            out.push(facet);
        }
    }
    out.sort();
    Ok(out)
}

/// A valid inequality supports a facet iff its tight points together with
/// the recession directions `e_i` (for `h_i = 0`) span `n - 1` dimensions.
fn is_facet(n: usize, points: &[ExponentVector], facet: &Facet) -> Result<bool> {
    let tight: Vec<&ExponentVector> = points.iter().filter(|p| facet.value(p) == facet.rhs).collect();
    let base = tight[0];
    let mut rows: Vec<Vec<i128>> = tight[1..]
        .iter()
        .map(|p| p.coords().iter().zip(base.coords()).map(|(&a, &b)| a as i128 - b as i128).collect())
        .collect();
    for (i, &h) in facet.normal.iter().enumerate() {
        if h == 0 {
            let mut e = vec![0i128; n];
            e[i] = 1;
            rows.push(e);
        }
    }
    Ok(rank(rows)? == n - 1)
}

/// Points at which the tight constraints (facets and coordinate planes)
/// have full rank.
fn vertices_of(n: usize, points: &[ExponentVector], facets: &[Facet]) -> Result<Vec<ExponentVector>> {
    let mut out = Vec::new();
    for p in points {
        let mut rows: Vec<Vec<i128>> = facets
            .iter()
            .filter(|f| f.value(p) == f.rhs)
            .map(|f| f.normal.iter().map(|&h| h as i128).collect())
            .collect();
        for i in 0..n {
            if p.get(i) == 0 {
                let mut e = vec![0i128; n];
                e[i] = 1;
                rows.push(e);
            }
        }
        if rank(rows)? == n && !out.contains(p) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// `NP(I)`.
pub fn newton_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    NewtonPolyhedron::new(ideal)
}

/// `I_alpha`: monomials whose exponent lies in `alpha * NP(I)`.
pub fn rational_power(ideal: &MonomialIdeal, alpha: &ScaleFactor) -> Result<MonomialIdeal> {
    NewtonPolyhedron::new(ideal)?.rational_power(alpha)
}

/// The integral closure, `I_1`.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    rational_power(ideal, &ScaleFactor::one())
}
