use alloc::format;
use alloc::vec::Vec;

use super::{RatFunc, TTPoly};
use crate::{Error, Result};

fn lcm(a: &TTPoly, b: &TTPoly) -> TTPoly {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() || a == b {
        return a.clone();
    }
    let g = a.gcd(b);
    a.div_exact(&g).expect("gcd divides").mul(b)
}

/// Solves `M x = b` over `F_q(t, theta)` for a matrix with at least as many
/// rows as columns.
///
/// Rows are cleared of denominators and reduced by fraction-free (Bareiss)
/// elimination in `F_q[t, theta]`. Returns the unique solution when the
/// columns are independent and every surplus row reduces to zero;
/// otherwise [`Error::Underdetermined`] or [`Error::Inconsistent`] naming the
/// first offending column or (original) row.
pub fn solve_linear(m: &[Vec<RatFunc>], b: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let rows = m.len();
    if rows != b.len() {
        return Err(Error::InvalidArgument("row count of M and b differ".into()));
    }
    let cols = m.first().map_or(0, |r| r.len());
    if rows < cols || m.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidArgument(format!(
            "expected a {rows}x{cols} matrix with rows >= cols"
        )));
    }
    if cols == 0 {
        return match b.iter().position(|x| !x.is_zero()) {
            Some(row) => Err(Error::Inconsistent { row }),
            None => Ok(Vec::new()),
        };
    }
    let field = m[0][0].field().clone();
    let mut a: Vec<Vec<TTPoly>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let l = row
                .iter()
                .chain(core::iter::once(rhs))
                .fold(TTPoly::one(&field), |acc, x| lcm(&acc, x.den()));
            row.iter()
                .chain(core::iter::once(rhs))
                .map(|x| {
                    x.num()
                        .mul(&l.div_exact(x.den()).expect("lcm is a multiple"))
                })
                .collect()
        })
        .collect();
    let mut perm: Vec<usize> = (0..rows).collect();
    let mut prev = TTPoly::one(&field);
    for k in 0..cols {
        let p = (k..rows)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (a[i][k].t_degree(), a[i][k].theta_degree()))
            .ok_or(Error::Underdetermined { column: k })?;
        a.swap(k, p);
        perm.swap(k, p);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..=cols {
                let v = pivot[k].mul(&row[j]).sub(&row[k].mul(&pivot[j]));
                row[j] = if prev.is_one() {
                    v
                } else {
                    v.div_exact(&prev).expect("Bareiss division is exact")
                };
            }
            row[k] = TTPoly::zero(&field);
        }
        prev = a[k][k].clone();
    }
    if let Some(i) = (cols..rows).find(|&i| !a[i][cols].is_zero()) {
        return Err(Error::Inconsistent { row: perm[i] });
    }
    let mut x: Vec<RatFunc> = Vec::with_capacity(cols);
    for k in (0..cols).rev() {
        let mut acc = RatFunc::from_poly(a[k][cols].clone());
        for (j, xj) in (k + 1..cols).zip(x.iter().rev()) {
            acc = acc.sub(&xj.mul_poly(&a[k][j]));
        }
        x.push(acc.div(&RatFunc::from_poly(a[k][k].clone()))?);
    }
    x.reverse();
    Ok(x)
}
