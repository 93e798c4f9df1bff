use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::ffield::{Fe, Field};
use crate::upoly;

/// A polynomial in `t` and `theta` over `F_q`, stored as a dense list of
/// `theta`-polynomials indexed by the power of `t`.
#[derive(Clone, Debug)]
pub struct TTPoly {
    field: Arc<Field>,
    rows: Vec<Vec<Fe>>,
}

impl PartialEq for TTPoly {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && *self.field == *other.field
    }
}

impl Eq for TTPoly {}

impl TTPoly {
    /// Builds from rows (`rows[i]` multiplies `t^i`); trims zeros.
    pub fn from_rows(field: &Arc<Field>, mut rows: Vec<Vec<Fe>>) -> Self {
        for r in rows.iter_mut() {
            upoly::trim(r);
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        TTPoly {
            field: field.clone(),
            rows,
        }
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        Self::from_rows(field, Vec::new())
    }

    pub fn constant(field: &Arc<Field>, c: Fe) -> Self {
        Self::from_rows(field, vec![vec![c]])
    }

    pub fn one(field: &Arc<Field>) -> Self {
        Self::constant(field, Fe::ONE)
    }

    pub fn from_int(field: &Arc<Field>, n: i64) -> Self {
        Self::constant(field, field.from_int(n))
    }

    pub fn t(field: &Arc<Field>) -> Self {
        Self::from_rows(field, vec![Vec::new(), vec![Fe::ONE]])
    }

    pub fn theta(field: &Arc<Field>) -> Self {
        Self::from_rows(field, vec![vec![Fe::ZERO, Fe::ONE]])
    }

    /// `c t^i theta^j`.
    pub fn monomial(field: &Arc<Field>, i: usize, j: usize, c: Fe) -> Self {
        let mut rows = vec![Vec::new(); i + 1];
        rows[i] = vec![Fe::ZERO; j + 1];
        rows[i][j] = c;
        Self::from_rows(field, rows)
    }

    /// A polynomial in `t` alone.
    pub fn from_t_poly(field: &Arc<Field>, c: &[Fe]) -> Self {
        Self::from_rows(field, c.iter().map(|&x| vec![x]).collect())
    }

    /// A polynomial in `theta` alone.
    pub fn from_theta_poly(field: &Arc<Field>, c: &[Fe]) -> Self {
        Self::from_rows(field, vec![c.to_vec()])
    }

    /// Builds from `(t_power, theta_power, coefficient)` triples; repeated
    /// positions are summed.
    pub fn from_terms(field: &Arc<Field>, terms: &[(usize, usize, Fe)]) -> Self {
        let mut rows: Vec<Vec<Fe>> = Vec::new();
        for &(i, j, c) in terms {
            if rows.len() <= i {
                rows.resize(i + 1, Vec::new());
            }
            if rows[i].len() <= j {
                rows[i].resize(j + 1, Fe::ZERO);
            }
            rows[i][j] = field.add(rows[i][j], c);
        }
        Self::from_rows(field, rows)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> &[Vec<Fe>] {
        &self.rows
    }

    /// The `theta`-polynomial multiplying `t^i`.
    pub fn row(&self, i: usize) -> &[Fe] {
        self.rows.get(i).map(|r| r.as_slice()).unwrap_or(&[])
    }

    pub fn coeff(&self, i: usize, j: usize) -> Fe {
        self.row(i).get(j).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rows.len() == 1 && self.rows[0] == [Fe::ONE]
    }

    /// Degree in `t`; `None` for zero.
    pub fn t_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Degree in `theta`; `None` for zero.
    pub fn theta_degree(&self) -> Option<usize> {
        self.rows
            .iter()
            .filter_map(|r| r.len().checked_sub(1))
            .max()
    }

    /// True when no positive power of `t` occurs.
    pub fn is_theta_only(&self) -> bool {
        self.rows.len() <= 1
    }

    pub fn is_constant(&self) -> bool {
        self.rows.len() <= 1 && self.row(0).len() <= 1
    }

    /// Nonzero terms `(t_power, theta_power, c)` sorted by `(t, theta)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Fe)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, &c)| (i, j, c))
        })
    }

    /// Leading term in graded-lex order: largest total degree, then largest
    /// power of `t`.
    pub fn leading_term(&self) -> Option<(usize, usize, Fe)> {
        self.terms().max_by_key(|&(i, j, _)| (i + j, i))
    }

    fn zip_rows(&self, o: &TTPoly, op: impl Fn(&Field, &[Fe], &[Fe]) -> Vec<Fe>) -> TTPoly {
        let n = self.rows.len().max(o.rows.len());
        let rows = (0..n)
            .map(|i| op(&self.field, self.row(i), o.row(i)))
            .collect();
        TTPoly::from_rows(&self.field, rows)
    }

    pub fn add(&self, o: &TTPoly) -> TTPoly {
        self.zip_rows(o, upoly::add)
    }

    pub fn sub(&self, o: &TTPoly) -> TTPoly {
        self.zip_rows(o, upoly::sub)
    }

    pub fn neg(&self) -> TTPoly {
        let rows = self
            .rows
            .iter()
            .map(|r| upoly::neg(&self.field, r))
            .collect();
        TTPoly::from_rows(&self.field, rows)
    }

    pub fn scale(&self, c: Fe) -> TTPoly {
        let rows = self
            .rows
            .iter()
            .map(|r| upoly::scale(&self.field, r, c))
            .collect();
        TTPoly::from_rows(&self.field, rows)
    }

    /// Multiplies by a `theta`-polynomial.
    pub fn mul_theta_poly(&self, c: &[Fe]) -> TTPoly {
        let rows = self
            .rows
            .iter()
            .map(|r| upoly::mul(&self.field, r, c))
            .collect();
        TTPoly::from_rows(&self.field, rows)
    }

    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: usize) -> TTPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut rows = vec![Vec::new(); k];
        rows.extend(self.rows.iter().cloned());
        TTPoly::from_rows(&self.field, rows)
    }

    pub fn mul(&self, o: &TTPoly) -> TTPoly {
        if self.is_zero() || o.is_zero() {
            return TTPoly::zero(&self.field);
        }
        let f = &*self.field;
        let mut rows = vec![Vec::new(); self.rows.len() + o.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in o.rows.iter().enumerate() {
                if b.is_empty() {
                    continue;
                }
                let p = upoly::mul(f, a, b);
                let r: &mut Vec<Fe> = &mut rows[i + j];
                *r = upoly::add(f, r, &p);
            }
        }
        TTPoly::from_rows(&self.field, rows)
    }

    pub fn pow(&self, mut n: u64) -> TTPoly {
        let mut r = TTPoly::one(&self.field);
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// `theta -> theta^{q^k}` with `t` fixed.
    pub fn tau(&self, k: u32) -> TTPoly {
        let f = &*self.field;
        let qk = (f.q() as usize).pow(k);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let c: Vec<Fe> = r.iter().map(|&x| f.frob_k(x, k)).collect();
                upoly::inflate(&c, qk)
            })
            .collect();
        TTPoly::from_rows(&self.field, rows)
    }

    /// Substitutes an element of the coefficient field for `t`.
    pub fn eval_t(&self, x: Fe) -> Vec<Fe> {
        let f = &*self.field;
        self.rows.iter().rev().fold(Vec::new(), |acc, r| {
            upoly::add(f, &upoly::scale(f, &acc, x), r)
        })
    }

    /// Monic gcd of the `theta`-rows, i.e. the content in `F_q[theta]`.
    pub fn theta_content(&self) -> Vec<Fe> {
        let f = &*self.field;
        let mut g: Vec<Fe> = Vec::new();
        for r in &self.rows {
            g = upoly::gcd(f, &g, r);
            if g.len() == 1 {
                break;
            }
        }
        g
    }

    /// Exact division by a `theta`-polynomial; `None` if inexact.
    pub fn div_theta_poly(&self, c: &[Fe]) -> Option<TTPoly> {
        let f = &*self.field;
        let rows: Option<Vec<Vec<Fe>>> = self
            .rows
            .iter()
            .map(|r| upoly::div_exact(f, r, c))
            .collect();
        Some(TTPoly::from_rows(&self.field, rows?))
    }

    /// Exact quotient `self / b`, or `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &TTPoly) -> Option<TTPoly> {
        let db = b.t_degree()?;
        if db == 0 {
            return self.div_theta_poly(&b.rows[0]);
        }
        let f = &*self.field;
        let lb = &b.rows[db];
        let mut r = self.clone();
        let mut qrows: Vec<Vec<Fe>> = Vec::new();
        while let Some(dr) = r.t_degree() {
            if dr < db {
                return None;
            }
            let k = dr - db;
            let c = upoly::div_exact(f, &r.rows[dr], lb)?;
            if qrows.len() <= k {
                qrows.resize(k + 1, Vec::new());
            }
            let term = b.mul_theta_poly(&c).shift_t(k);
            qrows[k] = c;
            r = r.sub(&term);
        }
        Some(TTPoly::from_rows(&self.field, qrows))
    }

    /// Pseudo-remainder of `self` by `b` as polynomials in `t`.
    fn pseudo_rem(&self, b: &TTPoly) -> TTPoly {
        let db = b.t_degree().expect("nonzero divisor");
        let lb = b.rows[db].clone();
        let mut r = self.clone();
        while let Some(dr) = r.t_degree() {
            if dr < db {
                break;
            }
            let lr = r.rows[dr].clone();
            r = r
                .mul_theta_poly(&lb)
                .sub(&b.mul_theta_poly(&lr).shift_t(dr - db));
        }
        r
    }

    fn primitive_part(&self) -> TTPoly {
        let c = self.theta_content();
        if c.len() <= 1 {
            return self.clone();
        }
        self.div_theta_poly(&c).expect("content divides")
    }

    /// A gcd in `F_q[t, theta]` (content in `F_q[theta]` times the
    /// primitive gcd in `t`), up to a unit.
    pub fn gcd(&self, o: &TTPoly) -> TTPoly {
        let f = &self.field;
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let c = upoly::gcd(f, &self.theta_content(), &o.theta_content());
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.t_degree() < b.t_degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.t_degree() == Some(0) {
                // b is a primitive theta-only polynomial, hence a unit.
                a = TTPoly::one(f);
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a.primitive_part().mul_theta_poly(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f3() -> Arc<Field> {
        Field::prime_power(3, 1).unwrap()
    }

    fn tt(f: &Arc<Field>, terms: &[(usize, usize, u32)]) -> TTPoly {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, Fe(c))).collect();
        TTPoly::from_terms(f, &t)
    }

    #[test]
    fn tau_substitutes_theta() {
        let f = f3();
        let x = TTPoly::t(&f).sub(&TTPoly::theta(&f));
        assert_eq!(TTPoly::t(&f).tau(1), TTPoly::t(&f));
        assert_eq!(TTPoly::theta(&f).tau(1), tt(&f, &[(0, 3, 1)]));
        assert_eq!(x.tau(2), tt(&f, &[(1, 0, 1), (0, 9, 2)]));
    }

    #[test]
    fn terms_are_sorted() {
        let f = f3();
        let x = tt(&f, &[(1, 0, 1), (0, 2, 2), (0, 1, 1)]);
        let terms: Vec<_> = x.terms().collect();
        assert_eq!(terms, vec![(0, 1, Fe(1)), (0, 2, Fe(2)), (1, 0, Fe(1))]);
        assert_eq!(x.leading_term(), Some((0, 2, Fe(2))));
    }

    #[test]
    fn gcd_finds_common_factor() {
        let f = f3();
        let a = TTPoly::t(&f).sub(&TTPoly::theta(&f));
        let b = TTPoly::t(&f).sub(&TTPoly::theta(&f).pow(3));
        let c = TTPoly::theta(&f).add(&TTPoly::one(&f));
        let x = a.mul(&b).mul(&c);
        let y = a.mul(&c).mul(&c);
        let g = x.gcd(&y);
        assert!(g.div_exact(&a.mul(&c)).is_some_and(|u| u.is_constant()));
    }

    fn arb_tt() -> impl Strategy<Value = Vec<(usize, usize, u32)>> {
        proptest::collection::vec((0usize..3, 0usize..4, 0u32..3), 0..6)
    }

    proptest! {
        #[test]
        fn exact_division_recovers_factor(a in arb_tt(), b in arb_tt()) {
            let f = f3();
            let (a, b) = (tt(&f, &a), tt(&f, &b));
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
        }

        #[test]
        fn gcd_divides_both(a in arb_tt(), b in arb_tt(), c in arb_tt()) {
            let f = f3();
            let (a, b, c) = (tt(&f, &a), tt(&f, &b), tt(&f, &c));
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let (x, y) = (a.mul(&c), b.mul(&c));
            let g = x.gcd(&y);
            prop_assert!(x.div_exact(&g).is_some());
            prop_assert!(y.div_exact(&g).is_some());
            prop_assert!(g.div_exact(&c).is_some());
        }

        #[test]
        fn tau_is_multiplicative(a in arb_tt(), b in arb_tt()) {
            let f = f3();
            let (a, b) = (tt(&f, &a), tt(&f, &b));
            prop_assert_eq!(a.mul(&b).tau(1), a.tau(1).mul(&b.tau(1)));
        }
    }
}
