//! A minimal commutative-ring interface and truncated power-series kernels
//! shared by the `F_q`-coefficient Laurent series and the `F_q(t, theta)`
//! u-expansions.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exact::{RatFunc, TTPoly};
use crate::ffield::{Fe, Field};
use crate::{Error, Result};

/// Ring operations supplied by a context object.
pub trait Ring {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, n: i64) -> Self::Elem;
}

impl Ring for Field {
    type Elem = Fe;
    fn zero(&self) -> Fe {
        Fe::ZERO
    }
    fn one(&self) -> Fe {
        Fe::ONE
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        Field::add(self, *a, *b)
    }
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        Field::sub(self, *a, *b)
    }
    fn neg(&self, a: &Fe) -> Fe {
        Field::neg(self, *a)
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        Field::mul(self, *a, *b)
    }
    fn inv(&self, a: &Fe) -> Result<Fe> {
        Field::inv(self, *a)
    }
    fn is_zero(&self, a: &Fe) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> Fe {
        Field::from_int(self, n)
    }
}

/// `F_q(t, theta)` as a [`Ring`].
#[derive(Clone, Debug)]
pub struct RatFuncs(pub Arc<Field>);

impl Ring for RatFuncs {
    type Elem = RatFunc;
    fn zero(&self) -> RatFunc {
        RatFunc::zero(&self.0)
    }
    fn one(&self) -> RatFunc {
        RatFunc::one(&self.0)
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.sub(b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        a.inv()
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> RatFunc {
        RatFunc::from_int(&self.0, n)
    }
}

/// `F_q[t, theta]` as a [`Ring`]; only nonzero constants are invertible.
#[derive(Clone, Debug)]
pub struct TTPolys(pub Arc<Field>);

impl Ring for TTPolys {
    type Elem = TTPoly;
    fn zero(&self) -> TTPoly {
        TTPoly::zero(&self.0)
    }
    fn one(&self) -> TTPoly {
        TTPoly::one(&self.0)
    }
    fn add(&self, a: &TTPoly, b: &TTPoly) -> TTPoly {
        a.add(b)
    }
    fn sub(&self, a: &TTPoly, b: &TTPoly) -> TTPoly {
        a.sub(b)
    }
    fn neg(&self, a: &TTPoly) -> TTPoly {
        a.neg()
    }
    fn mul(&self, a: &TTPoly, b: &TTPoly) -> TTPoly {
        a.mul(b)
    }
    fn inv(&self, a: &TTPoly) -> Result<TTPoly> {
        if !a.is_constant() || a.is_zero() {
            return Err(Error::InvalidArgument("polynomial is not a unit".into()));
        }
        let c = self.0.inv(a.coeff(0, 0))?;
        Ok(TTPoly::constant(&self.0, c))
    }
    fn is_zero(&self, a: &TTPoly) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> TTPoly {
        TTPoly::from_int(&self.0, n)
    }
}

/// Truncated power series `sum a_i x^i` as coefficient vectors; missing
/// trailing entries are zero and results have length `n`.
pub mod pseries {
    use super::*;

    fn get<R: Ring>(r: &R, a: &[R::Elem], i: usize) -> R::Elem {
        a.get(i).cloned().unwrap_or_else(|| r.zero())
    }

    pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem], n: usize) -> Vec<R::Elem> {
        (0..n)
            .map(|i| r.add(&get(r, a, i), &get(r, b, i)))
            .collect()
    }

    pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem], n: usize) -> Vec<R::Elem> {
        (0..n)
            .map(|i| r.sub(&get(r, a, i), &get(r, b, i)))
            .collect()
    }

    /// `a b mod x^n`.
    pub fn mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem], n: usize) -> Vec<R::Elem> {
        let mut c = vec![r.zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                if !r.is_zero(y) {
                    c[i + j] = r.add(&c[i + j], &r.mul(x, y));
                }
            }
        }
        c
    }

    /// `a^{-1} mod x^n`; needs an invertible constant term.
    pub fn inv<R: Ring>(r: &R, a: &[R::Elem], n: usize) -> Result<Vec<R::Elem>> {
        let c0 = r.inv(&get(r, a, 0))?;
        let mut b = Vec::with_capacity(n);
        if n == 0 {
            return Ok(b);
        }
        b.push(c0.clone());
        for k in 1..n {
            let mut s = r.zero();
            for i in 1..=k.min(a.len().saturating_sub(1)) {
                if !r.is_zero(&a[i]) {
                    s = r.add(&s, &r.mul(&a[i], &b[k - i]));
                }
            }
            b.push(r.neg(&r.mul(&s, &c0)));
        }
        Ok(b)
    }

    pub fn pow<R: Ring>(r: &R, a: &[R::Elem], mut k: u64, n: usize) -> Vec<R::Elem> {
        let mut acc = vec![r.one()];
        acc.resize(n, r.zero());
        acc.truncate(n);
        let mut b: Vec<R::Elem> = a.iter().take(n).cloned().collect();
        while k > 0 {
            if k & 1 == 1 {
                acc = mul(r, &acc, &b, n);
            }
            k >>= 1;
            if k > 0 {
                b = mul(r, &b, &b, n);
            }
        }
        acc
    }

    /// The `k`-th root of `a mod x^n` with constant term 1, for `a` with
    /// constant term 1 and `k` invertible in the ring (Newton iteration).
    pub fn root_one<R: Ring>(r: &R, a: &[R::Elem], k: u64, n: usize) -> Result<Vec<R::Elem>> {
        let kinv = r.inv(&r.from_int(k as i64))?;
        let mut y = vec![r.one()];
        let mut prec = 1usize;
        while prec < n {
            prec = (2 * prec).min(n);
            y.resize(prec, r.zero());
            // y <- y - (y^k - a) / (k y^{k-1})
            let ykm1 = pow(r, &y, k - 1, prec);
            let yk = mul(r, &ykm1, &y, prec);
            let err = sub(r, &yk, a, prec);
            let d = inv(r, &ykm1, prec)?;
            let step: Vec<R::Elem> = mul(r, &err, &d, prec)
                .iter()
                .map(|e| r.mul(e, &kinv))
                .collect();
            y = sub(r, &y, &step, prec);
        }
        y.resize(n, r.zero());
        Ok(y)
    }
}
