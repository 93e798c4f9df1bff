use alloc::sync::Arc;
use alloc::vec::Vec;

use super::laurent::{TruncLaurent, EXACT};
use crate::exact::TTPoly;
use crate::ffield::{Fe, Field};
use crate::{Error, Result};

/// A power series `sum_{j <= Nt} c_j t^j` with truncated Laurent
/// coefficients, optionally carrying a growth certificate `g`: the
/// coefficient of `t^j` has valuation at least `g j` (in `theta^{-1}`).
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries {
    coeffs: Vec<TruncLaurent>,
    growth: Option<u32>,
}

impl TSeries {
    /// Builds without a growth certificate; `coeffs` must be nonempty and
    /// share field and ramification.
    pub fn new(coeffs: Vec<TruncLaurent>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a t-series needs at least one coefficient"
        );
        let m = coeffs[0].ram();
        assert!(
            coeffs.iter().all(|c| c.ram() == m),
            "ramification indices differ"
        );
        TSeries {
            coeffs,
            growth: None,
        }
    }

    /// Attaches a growth certificate after checking it against every known
    /// nonzero coefficient.
    pub fn with_growth(mut self, g: u32) -> Result<Self> {
        let m = self.ram() as i64;
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && c.valuation() < g as i64 * j as i64 * m {
                return Err(Error::GrowthViolated { t_power: j });
            }
        }
        self.growth = Some(g);
        Ok(self)
    }

    /// Constant series `c`, padded to `nt`.
    pub fn constant(c: TruncLaurent, nt: usize) -> Self {
        let z = TruncLaurent::zero(c.field(), c.ram(), EXACT);
        let mut v = Vec::with_capacity(nt + 1);
        v.push(c);
        v.resize(nt + 1, z);
        TSeries::new(v)
    }

    /// A polynomial in `t` and `theta`, truncated at `t^nt`.
    pub fn from_ttpoly(p: &TTPoly, nt: usize) -> Self {
        let f = p.field();
        let coeffs = (0..=nt)
            .map(|i| TruncLaurent::from_poly(f, p.row(i)))
            .collect();
        TSeries::new(coeffs)
    }

    pub fn nt(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn growth(&self) -> Option<u32> {
        self.growth
    }

    pub fn coeffs(&self) -> &[TruncLaurent] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &TruncLaurent {
        &self.coeffs[j]
    }

    pub fn field(&self) -> &Arc<Field> {
        self.coeffs[0].field()
    }

    pub fn ram(&self) -> u32 {
        self.coeffs[0].ram()
    }

    /// Smallest coefficient precision.
    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn meet_growth(a: Option<u32>, b: Option<u32>) -> Option<u32> {
        Some(a?.min(b?))
    }

    pub fn truncate_t(&self, nt: usize) -> TSeries {
        TSeries {
            coeffs: self.coeffs[..=nt.min(self.nt())].to_vec(),
            growth: self.growth,
        }
    }

    pub fn truncate_prec(&self, p: i64) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|c| c.truncate(p)).collect(),
            growth: self.growth,
        }
    }

    pub fn add(&self, o: &TSeries) -> TSeries {
        let n = self.nt().min(o.nt());
        TSeries {
            coeffs: (0..=n).map(|j| self.coeffs[j].add(&o.coeffs[j])).collect(),
            growth: Self::meet_growth(self.growth, o.growth),
        }
    }

    pub fn sub(&self, o: &TSeries) -> TSeries {
        let n = self.nt().min(o.nt());
        TSeries {
            coeffs: (0..=n).map(|j| self.coeffs[j].sub(&o.coeffs[j])).collect(),
            growth: Self::meet_growth(self.growth, o.growth),
        }
    }

    pub fn neg(&self) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            growth: self.growth,
        }
    }

    /// Truncated product; the result is known through `t^{min(Nt)}`.
    pub fn mul(&self, o: &TSeries) -> TSeries {
        let n = self.nt().min(o.nt());
        let coeffs = (0..=n)
            .map(|j| {
                (1..=j).fold(self.coeffs[0].mul(&o.coeffs[j]), |acc, i| {
                    acc.add(&self.coeffs[i].mul(&o.coeffs[j - i]))
                })
            })
            .collect();
        TSeries {
            coeffs,
            growth: Self::meet_growth(self.growth, o.growth),
        }
    }

    /// Multiplies every coefficient by a `t`-free value.
    pub fn scale(&self, c: &TruncLaurent) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
            growth: None,
        }
    }

    /// Multiplies by the polynomial `t - c`.
    pub fn mul_t_minus(&self, c: &TruncLaurent) -> TSeries {
        let coeffs = (0..=self.nt())
            .map(|j| {
                let b = self.coeffs[j].mul(c).neg();
                if j == 0 {
                    b
                } else {
                    b.add(&self.coeffs[j - 1])
                }
            })
            .collect();
        TSeries {
            coeffs,
            growth: None,
        }
    }

    /// Inverse as a power series in `t`; needs an invertible constant
    /// coefficient. Exact inputs are inverted to absolute precision `cap`.
    pub fn inv(&self, cap: i64) -> Result<TSeries> {
        let b0 = self.coeffs[0].inv(cap)?;
        let mut b: Vec<TruncLaurent> = Vec::with_capacity(self.coeffs.len());
        b.push(b0.clone());
        for k in 1..=self.nt() {
            let s = (1..=k).fold(
                TruncLaurent::zero(self.field(), self.ram(), EXACT),
                |acc, i| acc.add(&self.coeffs[i].mul(&b[k - i])),
            );
            b.push(s.mul(&b0).neg());
        }
        Ok(TSeries {
            coeffs: b,
            growth: None,
        })
    }

    /// `tau^k`: the `q^k`-power map on every coefficient, `t` fixed.
    pub fn tau(&self, k: u32) -> TSeries {
        TSeries {
            coeffs: self.coeffs.iter().map(|c| c.tau(k)).collect(),
            growth: None,
        }
    }

    /// `sum_j c_j xi^j` for `xi` in the coefficient field (so `|xi| <= 1`),
    /// with the discarded tail bounded by the growth certificate: the result
    /// is known below `min(coefficient precisions, g (Nt + 1))`.
    pub fn eval_t(&self, xi: Fe) -> Result<TruncLaurent> {
        let g = self.growth.ok_or(Error::MissingGrowth)?;
        let f = self.field();
        let tail = g as i64 * (self.nt() as i64 + 1) * self.ram() as i64;
        let mut acc = TruncLaurent::zero(f, self.ram(), tail);
        let mut p = Fe::ONE;
        for c in &self.coeffs {
            acc = acc.add(&c.scale(p));
            p = f.mul(p, xi);
        }
        Ok(acc.truncate(tail))
    }
}
