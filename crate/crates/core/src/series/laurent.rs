use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::apoly::APoly;
use crate::ffield::{Embedding, Fe, Field};
use crate::ring::pseries;
use crate::{Error, Result};

/// Precision of values that are known exactly.
pub const EXACT: i64 = i64::MAX / 4;

pub(crate) fn padd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

fn pmul(a: i64, k: i64) -> i64 {
    if a >= EXACT {
        EXACT
    } else {
        a.saturating_mul(k).min(EXACT)
    }
}

/// A truncated Laurent series in `theta^{-1/m}` over a finite field:
/// `sum_{k >= lead} c_k theta^{-k/m} + O(theta^{-prec/m})`.
///
/// Exponents are stored as numerators `k` of `theta^{-k/m}`, so larger `k`
/// means smaller absolute value. `prec` is the first unknown numerator;
/// [`EXACT`] marks a value known to all orders.
#[derive(Clone, Debug)]
pub struct TruncLaurent {
    field: Arc<Field>,
    ram: u32,
    lead: i64,
    coeffs: Vec<Fe>,
    prec: i64,
}

/// Operations of [`tl_arith`]; the second operand is ignored for unary ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TlOp {
    Add,
    Mul,
    /// Inverse, computed to at most the given absolute precision.
    Inv(i64),
    /// `n`-th root with the smallest-code root of the leading coefficient,
    /// computed to at most the given absolute precision.
    NthRoot(u32, i64),
}

pub fn tl_arith(x: &TruncLaurent, y: &TruncLaurent, op: TlOp) -> Result<TruncLaurent> {
    match op {
        TlOp::Add => {
            x.check_compatible(y)?;
            Ok(x.add(y))
        }
        TlOp::Mul => {
            x.check_compatible(y)?;
            Ok(x.mul(y))
        }
        TlOp::Inv(cap) => x.inv(cap),
        TlOp::NthRoot(n, cap) => x.nth_root(n, None, cap),
    }
}

impl TruncLaurent {
    /// Builds from coefficients starting at numerator `lead`; entries at or
    /// beyond `prec` are dropped.
    pub fn new(field: &Arc<Field>, ram: u32, lead: i64, coeffs: Vec<Fe>, prec: i64) -> Self {
        assert!(ram >= 1, "ramification index must be positive");
        let mut x = TruncLaurent {
            field: field.clone(),
            ram,
            lead,
            coeffs,
            prec: prec.min(EXACT),
        };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        let keep = (self.prec - self.lead).clamp(0, self.coeffs.len() as i64) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let z = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if z > 0 {
            self.coeffs.drain(..z);
            self.lead += z as i64;
        }
        if self.coeffs.is_empty() {
            self.lead = self.prec;
        }
    }

    pub fn zero(field: &Arc<Field>, ram: u32, prec: i64) -> Self {
        Self::new(field, ram, prec, Vec::new(), prec)
    }

    pub fn constant(field: &Arc<Field>, c: Fe) -> Self {
        Self::new(field, 1, 0, vec![c], EXACT)
    }

    pub fn one(field: &Arc<Field>) -> Self {
        Self::constant(field, Fe::ONE)
    }

    /// `c theta^e` exactly (`ram = 1`).
    pub fn monomial(field: &Arc<Field>, c: Fe, e: i64) -> Self {
        Self::new(field, 1, -e, vec![c], EXACT)
    }

    pub fn theta(field: &Arc<Field>) -> Self {
        Self::monomial(field, Fe::ONE, 1)
    }

    /// A polynomial in `theta` (coefficients constant term first) exactly.
    pub fn from_poly(field: &Arc<Field>, c: &[Fe]) -> Self {
        if c.is_empty() {
            return Self::zero(field, 1, EXACT);
        }
        let d = c.len() as i64 - 1;
        Self::new(field, 1, -d, c.iter().rev().copied().collect(), EXACT)
    }

    pub fn from_apoly(a: &APoly) -> Self {
        Self::from_poly(a.field(), a.coeffs())
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Stored coefficients from `lead` upward.
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation numerator: `lead`, or `prec` for a zero value.
    pub fn valuation(&self) -> i64 {
        self.lead
    }

    /// Coefficient of `theta^{-k/m}`, or `None` when `k >= prec`.
    pub fn coeff(&self, k: i64) -> Option<Fe> {
        if k >= self.prec {
            return None;
        }
        if k < self.lead {
            return Some(Fe::ZERO);
        }
        Some(
            self.coeffs
                .get((k - self.lead) as usize)
                .copied()
                .unwrap_or(Fe::ZERO),
        )
    }

    pub fn leading_coeff(&self) -> Fe {
        self.coeffs.first().copied().unwrap_or(Fe::ZERO)
    }

    fn check_compatible(&self, o: &TruncLaurent) -> Result<()> {
        if *self.field != *o.field {
            return Err(Error::FieldMismatch);
        }
        if self.ram != o.ram {
            return Err(Error::InvalidArgument("ramification indices differ".into()));
        }
        Ok(())
    }

    fn same(&self, o: &TruncLaurent) {
        assert_eq!(self.ram, o.ram, "ramification indices differ");
        debug_assert!(*self.field == *o.field, "coefficient fields differ");
    }

    /// Lowers the precision to `min(prec, p)`.
    pub fn truncate(&self, p: i64) -> TruncLaurent {
        Self::new(
            &self.field,
            self.ram,
            self.lead,
            self.coeffs.clone(),
            self.prec.min(p),
        )
    }

    fn combine(&self, o: &TruncLaurent, f: impl Fn(Fe, Fe) -> Fe) -> TruncLaurent {
        self.same(o);
        let prec = self.prec.min(o.prec);
        let end = |x: &TruncLaurent| {
            if x.is_zero() {
                i64::MIN
            } else {
                x.lead + x.coeffs.len() as i64
            }
        };
        let lo = self.lead.min(o.lead);
        let hi = end(self).max(end(o)).min(prec);
        if hi <= lo {
            return Self::zero(&self.field, self.ram, prec);
        }
        let c = (lo..hi)
            .map(|k| {
                let a = self.coeff(k).unwrap_or(Fe::ZERO);
                let b = o.coeff(k).unwrap_or(Fe::ZERO);
                f(a, b)
            })
            .collect();
        Self::new(&self.field, self.ram, lo, c, prec)
    }

    pub fn add(&self, o: &TruncLaurent) -> TruncLaurent {
        let f = &*self.field;
        self.combine(o, |a, b| f.add(a, b))
    }

    pub fn sub(&self, o: &TruncLaurent) -> TruncLaurent {
        let f = &*self.field;
        self.combine(o, |a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> TruncLaurent {
        let c = self.coeffs.iter().map(|&x| self.field.neg(x)).collect();
        Self::new(&self.field, self.ram, self.lead, c, self.prec)
    }

    pub fn scale(&self, s: Fe) -> TruncLaurent {
        let c = self.coeffs.iter().map(|&x| self.field.mul(x, s)).collect();
        Self::new(&self.field, self.ram, self.lead, c, self.prec)
    }

    /// Multiplies by `theta^e` (exact shift of all exponents).
    pub fn mul_theta_pow(&self, e: i64) -> TruncLaurent {
        let s = e * self.ram as i64;
        let prec = if self.is_exact() {
            EXACT
        } else {
            self.prec - s
        };
        Self::new(
            &self.field,
            self.ram,
            self.lead - s,
            self.coeffs.clone(),
            prec,
        )
    }

    pub fn mul(&self, o: &TruncLaurent) -> TruncLaurent {
        self.same(o);
        let prec = padd(self.prec, o.valuation()).min(padd(o.prec, self.valuation()));
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field, self.ram, prec);
        }
        let lead = self.lead + o.lead;
        let full = self.coeffs.len() + o.coeffs.len() - 1;
        let n = ((prec - lead).max(0) as usize).min(full);
        let c = pseries::mul(&*self.field, &self.coeffs, &o.coeffs, n);
        Self::new(&self.field, self.ram, lead, c, prec)
    }

    pub fn square(&self) -> TruncLaurent {
        self.mul(self)
    }

    pub fn pow(&self, mut n: u64) -> TruncLaurent {
        let mut r = TruncLaurent {
            ram: self.ram,
            ..Self::one(&self.field)
        };
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.square();
            }
        }
        r
    }

    /// `1/x` to absolute precision `min(prec - 2 lead, cap)`.
    pub fn inv(&self, cap: i64) -> Result<TruncLaurent> {
        if self.is_zero() {
            return Err(if self.is_exact() {
                Error::DivisionByZero
            } else {
                Error::PrecisionExhausted
            });
        }
        let prec = if self.is_exact() {
            cap
        } else {
            (self.prec - 2 * self.lead).min(cap)
        };
        let lead = -self.lead;
        if prec <= lead {
            return Err(Error::PrecisionExhausted);
        }
        let n = (prec - lead) as usize;
        let c = pseries::inv(&*self.field, &self.coeffs, n)?;
        Ok(Self::new(&self.field, self.ram, lead, c, prec))
    }

    pub fn div(&self, o: &TruncLaurent, cap: i64) -> Result<TruncLaurent> {
        Ok(self.mul(&o.inv(cap)?))
    }

    /// The `n`-th root whose leading coefficient is `designated` (or the
    /// smallest-code root of the leading coefficient). Relative precision is
    /// preserved; exact inputs are computed to absolute precision `cap`.
    pub fn nth_root(&self, n: u32, designated: Option<Fe>, cap: i64) -> Result<TruncLaurent> {
        let f = &*self.field;
        if n == 0 || n.is_multiple_of(f.characteristic()) {
            return Err(Error::InvalidArgument(
                "root index must be prime to p".into(),
            ));
        }
        if self.is_zero() {
            return Err(Error::PrecisionExhausted);
        }
        if self.lead % n as i64 != 0 {
            return Err(Error::InvalidArgument(
                "leading exponent not divisible by n".into(),
            ));
        }
        let c = self.leading_coeff();
        let r = match designated {
            Some(r) if f.pow(r, n as u64) == c => r,
            Some(_) => return Err(Error::NotAnNthPower),
            None => f.nth_root(c, n as u64).ok_or(Error::NotAnNthPower)?,
        };
        let lead = self.lead / n as i64;
        let rel = if self.is_exact() {
            cap - lead
        } else {
            (self.prec - self.lead).min(cap - lead)
        };
        if rel <= 0 {
            return Err(Error::PrecisionExhausted);
        }
        let cinv = f.inv(c)?;
        let unit: Vec<Fe> = self.coeffs.iter().map(|&x| f.mul(x, cinv)).collect();
        let y = pseries::root_one(f, &unit, n as u64, rel as usize)?;
        let y: Vec<Fe> = y.into_iter().map(|x| f.mul(x, r)).collect();
        Ok(Self::new(&self.field, self.ram, lead, y, lead + rel))
    }

    /// `x -> x^{q^k}`: coefficients through the `q`-Frobenius, exponents
    /// times `q^k`; the precision scales by `q^k` as well.
    pub fn tau(&self, k: u32) -> TruncLaurent {
        if k == 0 || self.is_zero() && self.is_exact() {
            return self.clone();
        }
        let qk = (self.field.q() as i64).pow(k);
        let prec = pmul(self.prec, qk);
        if self.is_zero() {
            return Self::zero(&self.field, self.ram, prec);
        }
        let lead = self.lead * qk;
        let len = ((self.coeffs.len() as i64 - 1) * qk + 1) as usize;
        let mut c = vec![Fe::ZERO; len];
        for (i, &x) in self.coeffs.iter().enumerate() {
            c[i * qk as usize] = self.field.frob_k(x, k);
        }
        Self::new(&self.field, self.ram, lead, c, prec)
    }

    /// Maps the coefficients along a field embedding.
    pub fn embed(&self, e: &Embedding) -> TruncLaurent {
        let c = self.coeffs.iter().map(|&x| e.map(x)).collect();
        Self::new(e.target(), self.ram, self.lead, c, self.prec)
    }

    /// Re-expresses in `theta^{-1/(m s)}`.
    pub fn ramify(&self, s: u32) -> TruncLaurent {
        if s == 1 {
            return self.clone();
        }
        let mut c = vec![Fe::ZERO; (self.coeffs.len().max(1) - 1) * s as usize + 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            c[i * s as usize] = x;
        }
        if self.coeffs.is_empty() {
            c.clear();
        }
        Self::new(
            &self.field,
            self.ram * s,
            self.lead * s as i64,
            c,
            pmul(self.prec, s as i64),
        )
    }

    /// The `theta`-exponent `e / ram` of the leading known nonzero term as
    /// `(e, ram)`, or `None` if zero to precision.
    pub fn leading_exponent(&self) -> Option<(i64, u32)> {
        (!self.is_zero()).then_some((-self.lead, self.ram))
    }

    /// True when `self` and `o` agree on every coefficient both know.
    pub fn agrees_with(&self, o: &TruncLaurent) -> bool {
        self.sub(o).is_zero()
    }
}

impl PartialEq for TruncLaurent {
    fn eq(&self, other: &Self) -> bool {
        self.ram == other.ram
            && self.lead == other.lead
            && self.prec == other.prec
            && self.coeffs == other.coeffs
            && *self.field == *other.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u32) -> Arc<Field> {
        match q {
            4 => Field::prime_power(2, 2).unwrap(),
            _ => Field::prime_power(q, 1).unwrap(),
        }
    }

    fn tl(f: &Arc<Field>, lead: i64, c: &[u32], prec: i64) -> TruncLaurent {
        TruncLaurent::new(
            f,
            1,
            lead,
            c.iter().map(|&x| Fe(x % f.order())).collect(),
            prec,
        )
    }

    #[test]
    fn geometric_inverse() {
        let f = f(3);
        let x = tl(&f, 0, &[1, 1], EXACT); // 1 + theta^{-1}
        let y = x.inv(8).unwrap();
        assert_eq!(y, tl(&f, 0, &[1, 2, 1, 2, 1, 2, 1, 2], 8));
        let one = TruncLaurent::one(&f);
        assert_eq!(one.nth_root(2, None, 10).unwrap(), tl(&f, 0, &[1], 10));
    }

    #[test]
    fn precision_rules() {
        let f = f(2);
        let a = tl(&f, -2, &[1, 0, 1], 5);
        let b = tl(&f, 1, &[1, 1], 4);
        assert_eq!(a.add(&b).prec(), 4);
        // min(5 + 1, 4 - 2)
        assert_eq!(a.mul(&b).prec(), 2);
        assert_eq!(a.inv(EXACT).unwrap().prec(), 9);
        assert_eq!(a.tau(1).prec(), 10);
        assert_eq!(a.tau(1).lead(), -4);
        let z = TruncLaurent::zero(&f, 1, 3);
        assert_eq!(z.inv(10), Err(Error::PrecisionExhausted));
        assert!(TruncLaurent::zero(&f, 1, EXACT).inv(3).is_err());
    }

    #[test]
    fn tau_examples() {
        // coefficients in F_4 viewed over F_2
        let (f4, _) = Field::prime_power(2, 1).unwrap().extension(2).unwrap();
        let c = TruncLaurent::constant(&f4, Fe(2));
        assert_eq!(c.tau(1), TruncLaurent::constant(&f4, Fe(3)));
        let x = TruncLaurent::monomial(&f4, Fe(1), -1);
        assert_eq!(x.tau(1), TruncLaurent::monomial(&f4, Fe(1), -2));
    }

    #[test]
    fn nth_root_errors() {
        let f = f(3);
        let minus_one = TruncLaurent::constant(&f, Fe(2));
        assert_eq!(minus_one.nth_root(2, None, 5), Err(Error::NotAnNthPower));
        let theta = TruncLaurent::theta(&f);
        assert!(theta.nth_root(2, None, 5).is_err());
        assert!(theta.ramify(2).nth_root(2, None, 5).is_ok());
    }

    fn arb_tl(q: u32) -> impl Strategy<Value = (i64, Vec<u32>, i64)> {
        (-3i64..3, proptest::collection::vec(0..q, 1..8), 1i64..10)
    }

    fn mk(f: &Arc<Field>, (lead, c, extra): &(i64, Vec<u32>, i64)) -> TruncLaurent {
        tl(f, *lead, c, lead + c.len() as i64 + extra - 1)
    }

    proptest! {
        #[test]
        fn mul_inv_is_one((x, q) in (arb_tl(5), Just(5u32))) {
            let f = f(q);
            let x = mk(&f, &x);
            prop_assume!(!x.is_zero());
            let y = x.inv(EXACT).unwrap();
            let p = x.mul(&y);
            prop_assert!(p.agrees_with(&TruncLaurent::one(&f)));
            prop_assert_eq!(p.prec(), x.prec() - x.lead());
        }

        #[test]
        fn tau_is_multiplicative(x in arb_tl(3), y in arb_tl(3)) {
            let f = f(3);
            let (x, y) = (mk(&f, &x), mk(&f, &y));
            prop_assert_eq!(x.mul(&y).tau(1), x.tau(1).mul(&y.tau(1)));
        }

        #[test]
        fn root_then_power(x in arb_tl(5), n in 1u32..5) {
            let f = f(5);
            let x = mk(&f, &x).ramify(n);
            prop_assume!(!x.is_zero());
            let x = x.scale(f.inv(x.leading_coeff()).unwrap());
            let r = x.nth_root(n, None, EXACT).unwrap();
            prop_assert!(r.pow(n as u64).agrees_with(&x));
        }
    }
}
