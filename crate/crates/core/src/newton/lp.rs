//! Exact-rational simplex feasibility, used as an independent check on the
//! facet description of Newton polyhedra.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::scale::ScaleFactor;

/// Whether `{x : A x = b, x >= 0}` is nonempty.
///
/// Phase one of the tableau simplex method with one artificial variable per
/// row and Bland's rule (lowest-index entering and leaving variables), which
/// cannot cycle.
pub fn is_feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m + 1;
    let rhs = width - 1;

    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = bi.is_negative();
        let mut t: Vec<BigRational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        t.resize(width, BigRational::zero());
        t[n + i] = BigRational::one();
        t[rhs] = if flip { -bi } else { bi.clone() };
        tab.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut z = vec![BigRational::zero(); width];
    for t in &tab {
        for j in 0..n {
            z[j] -= &t[j];
        }
        z[rhs] -= &t[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| z[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, t) in tab.iter().enumerate() {
            if t[enter].is_positive() {
                let ratio = &t[rhs] / &t[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (r, _) = leave.expect("phase-one objective is bounded");
        let piv = tab[r][enter].clone();
        tab[r].iter_mut().for_each(|x| *x /= &piv);
        let prow = tab[r].clone();
        for (i, t) in tab.iter_mut().enumerate() {
            if i != r && !t[enter].is_zero() {
                let f = t[enter].clone();
                t.iter_mut().zip(&prow).for_each(|(x, p)| *x -= &f * p);
            }
        }
        let f = z[enter].clone();
        z.iter_mut().zip(&prow).for_each(|(x, p)| *x -= &f * p);
        basis[r] = enter;
    }
    z[rhs].is_zero()
}

/// `v` lies in `alpha * conv(gens) + R_{>=0}^n`, decided by LP feasibility of
/// `lambda >= 0, sum lambda = 1, alpha * sum lambda_i g_i <= v`.
pub fn lp_scaled_membership(ideal: &MonomialIdeal, v: &ExponentVector, alpha: &ScaleFactor) -> Result<bool> {
    ideal.require_nonzero()?;
    v.check_len(ideal.nvars())?;
    let n = ideal.nvars();
    let gens = ideal.generators();
    let m = gens.len();
    let int = |x: u64| BigRational::from_integer(x.into());
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row = vec![BigRational::zero(); m + n];
        for (i, g) in gens.iter().enumerate() {
            row[i] = alpha.value() * int(g.get(j));
        }
        row[m + j] = BigRational::one();
        a.push(row);
        b.push(int(v.get(j)));
    }
    let mut row = vec![BigRational::zero(); m + n];
    row[..m].iter_mut().for_each(|x| *x = BigRational::one());
    a.push(row);
    b.push(BigRational::one());
    Ok(is_feasible(&a, &b))
}
