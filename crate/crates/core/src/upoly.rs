//! Dense univariate polynomials over a [`Field`], stored as trimmed
//! coefficient vectors (constant term first).

use alloc::vec;
use alloc::vec::Vec;

use crate::ffield::{Fe, Field};
use crate::{Error, Result};

pub fn trim(a: &mut Vec<Fe>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn degree(a: &[Fe]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn add(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    let mut r: Vec<Fe> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(Fe::ZERO);
            let y = b.get(i).copied().unwrap_or(Fe::ZERO);
            f.add(x, y)
        })
        .collect();
    trim(&mut r);
    r
}

pub fn neg(f: &Field, a: &[Fe]) -> Vec<Fe> {
    a.iter().map(|&c| f.neg(c)).collect()
}

pub fn sub(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    let mut r: Vec<Fe> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(Fe::ZERO);
            let y = b.get(i).copied().unwrap_or(Fe::ZERO);
            f.sub(x, y)
        })
        .collect();
    trim(&mut r);
    r
}

/// `a += c * x^shift * b` in place.
pub fn add_scaled_shifted(f: &Field, a: &mut Vec<Fe>, b: &[Fe], c: Fe, shift: usize) {
    if c.is_zero() || b.is_empty() {
        return;
    }
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, Fe::ZERO);
    }
    for (i, &y) in b.iter().enumerate() {
        if !y.is_zero() {
            a[i + shift] = f.add(a[i + shift], f.mul(c, y));
        }
    }
    trim(a);
}

pub fn scale(f: &Field, a: &[Fe], c: Fe) -> Vec<Fe> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|&x| f.mul(x, c)).collect()
}

pub fn mul(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if !y.is_zero() {
                r[i + j] = f.add(r[i + j], f.mul(x, y));
            }
        }
    }
    trim(&mut r);
    r
}

pub fn pow(f: &Field, a: &[Fe], mut n: u64) -> Vec<Fe> {
    let mut r = vec![Fe::ONE];
    let mut b = a.to_vec();
    while n > 0 {
        if n & 1 == 1 {
            r = mul(f, &r, &b);
        }
        n >>= 1;
        if n > 0 {
            b = mul(f, &b, &b);
        }
    }
    r
}

/// Quotient and remainder; errors when `b` is zero.
pub fn divrem(f: &Field, a: &[Fe], b: &[Fe]) -> Result<(Vec<Fe>, Vec<Fe>)> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    let lc_inv = f.inv(b[db])?;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![Fe::ZERO; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = f.mul(*r.last().unwrap(), lc_inv);
        q[k] = c;
        for i in 0..=db {
            r[k + i] = f.sub(r[k + i], f.mul(c, b[i]));
        }
        trim(&mut r);
    }
    trim(&mut q);
    Ok((q, r))
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn div_exact(f: &Field, a: &[Fe], b: &[Fe]) -> Option<Vec<Fe>> {
    let (q, r) = divrem(f, a, b).ok()?;
    r.is_empty().then_some(q)
}

pub fn make_monic(f: &Field, a: &[Fe]) -> Vec<Fe> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(
            f,
            &a[..=d],
            f.inv(a[d]).expect("nonzero leading coefficient"),
        ),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem(f, &a, &b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    make_monic(f, &a)
}

pub fn eval(f: &Field, a: &[Fe], x: Fe) -> Fe {
    a.iter()
        .rev()
        .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Applies `c -> c^q` to every coefficient.
pub fn frob_coeffs(f: &Field, a: &[Fe]) -> Vec<Fe> {
    a.iter().map(|&c| f.frob(c)).collect()
}

/// Substitutes `x -> x^k`.
pub fn inflate(a: &[Fe], k: usize) -> Vec<Fe> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Fe::ZERO; (a.len() - 1) * k + 1];
    for (i, &c) in a.iter().enumerate() {
        r[i * k] = c;
    }
    r
}

/// `a^q` when the coefficients lie in `F_q`: `x -> x^q` applied to the variable.
pub fn qth_power_fq(a: &[Fe], q: usize) -> Vec<Fe> {
    inflate(a, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> alloc::sync::Arc<Field> {
        Field::prime_power(3, 1).unwrap()
    }

    fn poly(v: &[u32]) -> Vec<Fe> {
        let mut r: Vec<Fe> = v.iter().map(|&c| Fe(c)).collect();
        trim(&mut r);
        r
    }

    #[test]
    fn gcd_of_products() {
        let f = f3();
        let a = poly(&[1, 1]); // x + 1
        let b = poly(&[2, 0, 1]); // x^2 - 1
        assert_eq!(gcd(&f, &a, &b), a);
        assert_eq!(gcd(&f, &[], &[]), Vec::<Fe>::new());
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in proptest::collection::vec(0u32..3, 0..8),
                               b in proptest::collection::vec(0u32..3, 1..5)) {
            let f = f3();
            let a = poly(&a);
            let b = poly(&b);
            prop_assume!(!b.is_empty());
            let (q, r) = divrem(&f, &a, &b).unwrap();
            prop_assert!(r.len() < b.len());
            prop_assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        }

        #[test]
        fn frobenius_is_qth_power(a in proptest::collection::vec(0u32..3, 0..6)) {
            let f = f3();
            let a = poly(&a);
            prop_assert_eq!(pow(&f, &a, 3), qth_power_fq(&a, 3));
        }
    }
}
