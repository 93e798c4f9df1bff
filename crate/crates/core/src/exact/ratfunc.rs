use alloc::sync::Arc;
use alloc::vec::Vec;

use super::TTPoly;
use crate::ffield::{Fe, Field};
use crate::upoly;
use crate::{Error, Result};

/// An element of `F_q(t, theta)` in lowest terms, with the graded-lex
/// leading coefficient of the denominator equal to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: TTPoly,
    den: TTPoly,
}

/// Binary operations of [`rf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Mul,
    Div,
}

pub fn rf_arith(x: &RatFunc, y: &RatFunc, op: RfOp) -> Result<RatFunc> {
    match op {
        RfOp::Add => Ok(x.add(y)),
        RfOp::Mul => Ok(x.mul(y)),
        RfOp::Div => x.div(y),
    }
}

impl RatFunc {
    pub fn zero(field: &Arc<Field>) -> Self {
        RatFunc {
            num: TTPoly::zero(field),
            den: TTPoly::one(field),
        }
    }

    pub fn one(field: &Arc<Field>) -> Self {
        Self::from_poly(TTPoly::one(field))
    }

    pub fn from_int(field: &Arc<Field>, n: i64) -> Self {
        Self::from_poly(TTPoly::from_int(field, n))
    }

    pub fn constant(field: &Arc<Field>, c: Fe) -> Self {
        Self::from_poly(TTPoly::constant(field, c))
    }

    pub fn t(field: &Arc<Field>) -> Self {
        Self::from_poly(TTPoly::t(field))
    }

    pub fn theta(field: &Arc<Field>) -> Self {
        Self::from_poly(TTPoly::theta(field))
    }

    pub fn from_poly(num: TTPoly) -> Self {
        let den = TTPoly::one(num.field());
        RatFunc { num, den }
    }

    /// `num / den`, reduced; errors when `den` is zero.
    pub fn new(num: TTPoly, den: TTPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: TTPoly, den: TTPoly) -> Self {
        let field = num.field().clone();
        if num.is_zero() {
            return Self::zero(&field);
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else if den.is_theta_only() {
            let g = upoly::gcd(&field, &num.theta_content(), den.row(0));
            if g.len() > 1 {
                (
                    num.div_theta_poly(&g).unwrap(),
                    den.div_theta_poly(&g).unwrap(),
                )
            } else {
                (num, den)
            }
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        Self::with_unit_leading(num, den)
    }

    fn with_unit_leading(num: TTPoly, den: TTPoly) -> Self {
        let (_, _, lc) = den.leading_term().expect("nonzero denominator");
        if lc == Fe::ONE {
            return RatFunc { num, den };
        }
        let s = num.field().inv(lc).unwrap();
        RatFunc {
            num: num.scale(s),
            den: den.scale(s),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        self.num.field()
    }

    pub fn num(&self) -> &TTPoly {
        &self.num
    }

    pub fn den(&self) -> &TTPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// True when `t` occurs in neither numerator nor denominator.
    pub fn is_theta_only(&self) -> bool {
        self.num.is_theta_only() && self.den.is_theta_only()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc {
                num: self.num.mul(&o.den).add(&o.num),
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return RatFunc {
                num: o.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::reduce(num, self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        let field = self.field();
        if self.is_zero() || o.is_zero() {
            return Self::zero(field);
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        // Cross-cancel so that reduced inputs give a reduced product.
        let (a, d) = cancel(&self.num, &o.den);
        let (c, b) = cancel(&o.num, &self.den);
        Self::with_unit_leading(a.mul(&c), b.mul(&d))
    }

    /// Multiplies by a polynomial.
    pub fn mul_poly(&self, p: &TTPoly) -> RatFunc {
        if self.den.is_one() {
            return Self::from_poly(self.num.mul(p));
        }
        self.mul(&Self::from_poly(p.clone()))
    }

    pub fn scale(&self, c: Fe) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.field());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_unit_leading(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: u64) -> RatFunc {
        Self::with_unit_leading(self.num.pow(n), self.den.pow(n))
    }

    /// `theta -> theta^{q^k}` in numerator and denominator.
    pub fn tau(&self, k: u32) -> RatFunc {
        if k == 0 {
            return self.clone();
        }
        Self::with_unit_leading(self.num.tau(k), self.den.tau(k))
    }

    /// Normalizes again (idempotent on values built by this type).
    pub fn normalized(&self) -> RatFunc {
        Self::reduce(self.num.clone(), self.den.clone())
    }
}

fn cancel(a: &TTPoly, b: &TTPoly) -> (TTPoly, TTPoly) {
    if a.is_constant() || b.is_constant() {
        return (a.clone(), b.clone());
    }
    if b.is_theta_only() || a.is_theta_only() {
        let f = a.field();
        let ca = if a.is_theta_only() {
            a.row(0).to_vec()
        } else {
            a.theta_content()
        };
        let cb = if b.is_theta_only() {
            b.row(0).to_vec()
        } else {
            b.theta_content()
        };
        let g: Vec<Fe> = upoly::gcd(f, &ca, &cb);
        if g.len() <= 1 {
            return (a.clone(), b.clone());
        }
        return (a.div_theta_poly(&g).unwrap(), b.div_theta_poly(&g).unwrap());
    }
    let g = a.gcd(b);
    if g.is_constant() {
        return (a.clone(), b.clone());
    }
    (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
}
