//! Fourier–Motzkin projection of `{x >= sum_i lambda_i v_i, lambda >= 0,
//! sum lambda = 1}` onto the `x` coordinates.
//!
//! Rows are `a . y >= b` over `y = (x, lambda_1, ..., lambda_{m-1})` in
//! exact `i128` arithmetic; `lambda_m` is substituted away up front. Each
//! row remembers which original rows it was combined from, and Chernikov's
//! rule discards rows built from more than `k + 1` originals after `k`
//! eliminations.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::monomial::ExponentVector;

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<i128>,
    rhs: i128,
    history: u128,
}

impl Row {
    fn normalize(mut self) -> Row {
        let g = self.coeffs.iter().fold(self.rhs.abs(), |g, &c| g.gcd(&c.abs()));
        if g > 1 {
            self.coeffs.iter_mut().for_each(|c| *c /= g);
            self.rhs /= g;
        }
        self
    }
}

fn checked_combo(a: i128, x: i128, b: i128, y: i128) -> Result<i128> {
    a.checked_mul(x)
        .and_then(|u| b.checked_mul(y).and_then(|v| u.checked_add(v)))
        .ok_or(Error::Overflow)
}

/// Inequalities `a . x >= b` (in `x` only) whose conjunction is exactly
/// `conv(points) + R_{>=0}^n`. The list may contain redundant rows.
pub(crate) fn project_hull(nvars: usize, points: &[ExponentVector]) -> Result<Vec<(Vec<i128>, i128)>> {
    let m = points.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    if m + nvars > 128 {
        return Err(Error::TooLarge(format!("{m} points in {nvars} variables")));
    }
    let width = nvars + m - 1;
    let last = &points[m - 1];
    let mut rows = Vec::with_capacity(m + nvars);
    let mut bit = 0u32;
    let mut next_bit = || {
        let b = 1u128 << bit;
        bit += 1;
        b
    };
    for i in 0..m - 1 {
        let mut coeffs = vec![0; width];
        coeffs[nvars + i] = 1;
        rows.push(Row { coeffs, rhs: 0, history: next_bit() });
    }
    if m > 1 {
        let mut coeffs = vec![0; width];
        coeffs[nvars..].iter_mut().for_each(|c| *c = -1);
        rows.push(Row { coeffs, rhs: -1, history: next_bit() });
    }
    for j in 0..nvars {
        let mut coeffs = vec![0; width];
        coeffs[j] = 1;
        for (i, p) in points[..m - 1].iter().enumerate() {
            coeffs[nvars + i] = last.get(j) as i128 - p.get(j) as i128;
        }
        rows.push(Row { coeffs, rhs: last.get(j) as i128, history: next_bit() });
    }

    let mut remaining: Vec<usize> = (nvars..width).collect();
    let mut eliminated = 0u32;
    while !remaining.is_empty() {
        // Eliminate the variable producing the fewest new rows.
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .map(|(k, &var)| {
                let pos = rows.iter().filter(|r| r.coeffs[var] > 0).count();
                let neg = rows.iter().filter(|r| r.coeffs[var] < 0).count();
                (k, pos * neg)
            })
            .min_by_key(|&(_, cost)| cost)
            .expect("nonempty");
        let var = remaining.swap_remove(pick);
        eliminated += 1;

        let (mut next, mut pos, mut neg) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.coeffs[var].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => next.push(r),
            }
        }
        for p in &pos {
            for n in &neg {
                let history = p.history | n.history;
                if history.count_ones() > eliminated + 1 {
                    continue;
                }
                let (ap, an) = (p.coeffs[var], -n.coeffs[var]);
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(&x, &y)| checked_combo(an, x, ap, y))
                    .collect::<Result<Vec<_>>>()?;
                let rhs = checked_combo(an, p.rhs, ap, n.rhs)?;
                next.push(Row { coeffs, rhs, history }.normalize());
            }
        }
        rows = dedup(next);
    }

    Ok(rows
        .into_iter()
        .filter(|r| r.coeffs[..nvars].iter().any(|&c| c != 0))
        .map(|r| (r.coeffs[..nvars].to_vec(), r.rhs))
        .collect())
}

fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut seen: HashMap<(Vec<i128>, i128), u128> = HashMap::new();
    for r in rows {
        if r.coeffs.iter().all(|&c| c == 0) {
            // 0 >= rhs: trivially true here, since the system is feasible.
            continue;
        }
        seen.entry((r.coeffs, r.rhs))
            .and_modify(|h| {
                if r.history.count_ones() < h.count_ones() {
                    *h = r.history;
                }
            })
            .or_insert(r.history);
    }
    let mut out: Vec<Row> = seen.into_iter().map(|((coeffs, rhs), history)| Row { coeffs, rhs, history }).collect();
    out.sort_by(|a, b| (&a.coeffs, a.rhs).cmp(&(&b.coeffs, b.rhs)));
    out
}

/// Rank over Q of a small integer matrix.
pub(crate) fn rank(mut rows: Vec<Vec<i128>>) -> Result<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, piv);
        for i in 0..rows.len() {
            if i == r || rows[i][col] == 0 {
                continue;
            }
            let (a, b) = (rows[r][col], rows[i][col]);
            let new = rows[i]
                .iter()
                .zip(&rows[r])
                .map(|(&x, &y)| checked_combo(a, x, -b, y))
                .collect::<Result<Vec<_>>>()?;
            let g = new.iter().fold(0i128, |g, &c| g.gcd(&c.abs()));
            rows[i] = if g > 1 { new.into_iter().map(|c| c / g).collect() } else { new };
        }
        r += 1;
    }
    Ok(r)
}
