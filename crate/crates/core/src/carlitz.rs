//! The Carlitz period and exponential, the normalized trivialisation
//! `sbar = s_Car / pi`, the product formula for `L(chi_t, 1)` and the
//! Mahler function `f_t`.
//!
//! Everything is stated without the root `(-theta)^{1/(q-1)}`: the period
//! enters through `pi^{q-1}` only, except in [`PeriodBundle::pi_root`].

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::apoly::{bracket, carlitz_d};
use crate::ffield::{Fe, Field};
use crate::ring::pseries;
use crate::series::{RootExt, TSeries, TruncLaurent, EXACT};
use crate::{Error, Result};

/// `prod_{i >= 1, q^i - 1 < n} (1 - x^{q^i - 1})` as a power series in
/// `x = theta^{-1}` modulo `x^n`.
fn period_product(field: &Field, n: usize) -> Vec<Fe> {
    let q = field.q() as usize;
    let mut acc = vec![Fe::ZERO; n.max(1)];
    acc[0] = Fe::ONE;
    let mut e = q - 1;
    while e < n {
        // acc *= (1 - x^e)
        for k in (e..n).rev() {
            acc[k] = field.sub(acc[k], acc[k - e]);
        }
        e = e * q + q - 1;
    }
    acc.truncate(n);
    acc
}

/// `pi^{q-1} = -theta^q prod_{i >= 1} (1 - theta^{1 - q^i})^{-(q-1)}`,
/// known below `theta^{-prec}`.
pub fn pi_qm1(field: &Arc<Field>, prec: i64) -> TruncLaurent {
    let q = field.q() as i64;
    let rel = (prec + q).max(1) as usize;
    let prod = period_product(field, rel);
    let inv = pseries::inv(&**field, &prod, rel).expect("constant term 1");
    let c = pseries::pow(&**field, &inv, (q - 1) as u64, rel);
    let c: Vec<Fe> = c.into_iter().map(|x| field.neg(x)).collect();
    TruncLaurent::new(field, 1, -q, c, prec)
}

/// The period in both forms.
#[derive(Clone, Debug)]
pub struct PeriodBundle {
    pub pi_qm1: TruncLaurent,
    pub pi_root: Option<RootExt>,
    pub prec: i64,
}

impl PeriodBundle {
    /// `pi^{q-1}`, and `pi = theta iota prod (1 - theta^{1-q^i})^{-1}` in the
    /// root extension when `with_root` is set. The `iota`-coordinate of
    /// `pi` is known below `theta^{-prec}`.
    pub fn new(field: &Arc<Field>, prec: i64, with_root: bool) -> Self {
        let pi_root = with_root.then(|| {
            let rel = (prec + 2).max(1) as usize;
            let prod = period_product(field, rel);
            let inv = pseries::inv(&**field, &prod, rel).expect("constant term 1");
            let theta_inv = TruncLaurent::new(field, 1, -1, inv, prec);
            RootExt::iota(&theta_inv).scale(&theta_inv)
        });
        PeriodBundle {
            pi_qm1: pi_qm1(field, prec),
            pi_root,
            prec,
        }
    }
}

/// Index of the last term of `sum eta^{q^n} / d_n` whose valuation can fall
/// below `prec`, for `eta` of valuation `v` (in `theta^{-1/m}`).
fn exp_terms_needed(v: i64, m: i64, q: i64, prec: i64) -> Result<u32> {
    // valuation of term n is q^n (v + n m); it increases once v + n m >= 0.
    let mut n = 0u32;
    loop {
        let qn = q.checked_pow(n).ok_or(Error::CannotCertifyTail)?;
        let vn = qn
            .checked_mul(v + n as i64 * m)
            .ok_or(Error::CannotCertifyTail)?;
        if v + n as i64 * m >= 0 && vn >= prec {
            return Ok(n);
        }
        n += 1;
        if n > 40 {
            return Err(Error::CannotCertifyTail);
        }
    }
}

/// `e_Car(eta) = sum_n eta^{q^n} / d_n` below `theta^{-prec}`.
pub fn carlitz_exp(eta: &TruncLaurent, prec: i64) -> Result<TruncLaurent> {
    let f = eta.field();
    let m = eta.ram() as i64;
    if eta.is_zero() {
        return Ok(TruncLaurent::zero(f, eta.ram(), eta.prec().min(prec)));
    }
    let q = f.q() as i64;
    let last = exp_terms_needed(eta.valuation(), m, q, prec)?;
    let mut acc = TruncLaurent::zero(f, eta.ram(), prec);
    let mut pw = eta.clone();
    for n in 0..last {
        let d = TruncLaurent::from_apoly(&carlitz_d(f, n)).ramify(eta.ram());
        acc = acc.add(&pw.div(&d, prec - pw.valuation().min(0) + 1)?);
        pw = pw.tau(1);
    }
    Ok(acc)
}

/// `e_Car` on the root extension, using `(c iota^i)^q = c^q (-theta)^i iota^i`.
pub fn carlitz_exp_root(eta: &RootExt, prec: i64) -> Result<RootExt> {
    let c0 = &eta.coords()[0];
    let f = c0.field().clone();
    let m = c0.ram() as i64;
    let q = f.q() as i64;
    // valuation of eta bounded by the coordinate valuations (iota has
    // valuation -m/(q-1) >= -m)
    let v = eta
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| c.valuation() - if i > 0 { m } else { 0 })
        .min()
        .unwrap();
    let last = exp_terms_needed(v, m, q, prec)?;
    let zero = TruncLaurent::zero(&f, c0.ram(), prec);
    let mut acc = RootExt::from_coords(vec![zero; eta.coords().len()]);
    let mut pw = eta.clone();
    let minus_theta = TruncLaurent::theta(&f).neg().ramify(c0.ram());
    for n in 0..last {
        let d = TruncLaurent::from_apoly(&carlitz_d(&f, n)).ramify(c0.ram());
        let dinv = d.inv(prec + q.pow(n) * (v.abs() + m) + 1)?;
        acc = acc.add(&pw.scale(&dinv));
        let coords = pw
            .coords()
            .iter()
            .enumerate()
            .map(|(i, c)| c.tau(1).mul(&minus_theta.pow(i as u64)))
            .collect();
        pw = RootExt::from_coords(coords);
    }
    Ok(acc)
}

/// `(pi^{q-1})^{(q^n - 1)/(q - 1)}` for `n = 0..=last`, by
/// `E_n = tau(E_{n-1}) pi^{q-1}`.
fn period_powers(pi: &TruncLaurent, last: u32) -> Vec<TruncLaurent> {
    let mut v = vec![TruncLaurent::one(pi.field())];
    for _ in 0..last {
        let next = v.last().unwrap().tau(1).mul(pi);
        v.push(next);
    }
    v
}

/// Valuation of `(pi^{q-1})^{(q^n-1)/(q-1)} / d_n`.
fn sbar_term_valuation(q: i64, n: u32) -> i64 {
    let qn = q.pow(n);
    n as i64 * qn - q * (qn - 1) / (q - 1)
}

/// `sbar = sum_n (pi^{q-1})^{(q^n-1)/(q-1)} d_n^{-1} sum_j t^j theta^{-q^n (j+1)}`
/// through `t^nt`, known below `theta^{-prec}`, with growth certificate 1.
pub fn sbar(field: &Arc<Field>, nt: usize, prec: i64) -> TSeries {
    let q = field.q() as i64;
    let mut last = 0u32;
    while sbar_term_valuation(q, last + 1) + q.pow(last + 1) < prec {
        last += 1;
    }
    let pi = pi_qm1(field, prec + q);
    let terms: Vec<TruncLaurent> = period_powers(&pi, last)
        .iter()
        .enumerate()
        .map(|(n, en)| {
            let d = TruncLaurent::from_apoly(&carlitz_d(field, n as u32));
            en.div(&d, prec + q * q.pow(n as u32)).unwrap()
        })
        .collect();
    let coeffs = (0..=nt)
        .map(|j| {
            let mut acc = TruncLaurent::zero(field, 1, prec);
            for (n, term) in terms.iter().enumerate() {
                let n = n as u32;
                let qn = q.pow(n);
                if sbar_term_valuation(q, n) + qn * (j as i64 + 1) >= prec {
                    break;
                }
                acc = acc.add(&term.mul_theta_pow(-qn * (j as i64 + 1)));
            }
            acc.truncate(prec)
        })
        .collect();
    TSeries::new(coeffs)
        .with_growth(1)
        .expect("coefficient j has valuation j + 1")
}

/// `(t - theta) sbar` evaluated at a point `t = x` through the partial
/// fractions `-1 + sum_{n >= 1} (pi^{q-1})^{(q^n-1)/(q-1)} d_n^{-1} (x - theta)/(theta^{q^n} - x)`,
/// valid for any `x` (the sum converges for `|x| < q^{q^n}` termwise).
pub fn t_minus_theta_sbar_at(x: &TruncLaurent, prec: i64) -> Result<TruncLaurent> {
    let field = x.field();
    let q = field.q() as i64;
    let theta = TruncLaurent::theta(field);
    let xm = x.sub(&theta);
    let mut acc = TruncLaurent::constant(field, field.neg(Fe::ONE)).truncate(prec);
    if xm.is_zero() && xm.is_exact() {
        return Ok(acc);
    }
    let dx = -xm.valuation();
    let dxx = (-x.valuation()).max(0);
    let pi = pi_qm1(field, prec + q + dx.max(0));
    let mut n = 1u32;
    loop {
        let qn = q.pow(n);
        let bound = sbar_term_valuation(q, n) + qn - dx;
        if qn > dxx && bound >= prec {
            break;
        }
        n += 1;
        if n > 40 {
            return Err(Error::CannotCertifyTail);
        }
    }
    let e = period_powers(&pi, n - 1);
    for (k, en) in e.iter().enumerate().skip(1) {
        let qk = q.pow(k as u32);
        let d = TruncLaurent::from_apoly(&carlitz_d(field, k as u32));
        let den = TruncLaurent::monomial(field, Fe::ONE, qk).sub(x);
        let cap = prec + 2 * q * qk + dx.abs();
        let term = en.mul(&xm).div(&d.mul(&den), cap)?;
        acc = acc.add(&term);
    }
    Ok(acc.truncate(prec))
}

/// `L(chi_t, 1) = prod_{i >= 1} (1 - (t - theta)/[i])` through `t^nt`,
/// known below `theta^{-prec}`.
pub fn l1_product(field: &Arc<Field>, nt: usize, prec: i64) -> TSeries {
    let q = field.q() as i64;
    let theta = TruncLaurent::theta(field);
    let mut acc = TSeries::constant(TruncLaurent::one(field), nt);
    let mut i = 1u32;
    while q.pow(i) - 1 < prec {
        let b = TruncLaurent::from_apoly(&bracket(field, i).unwrap());
        let binv = b.inv(prec + 1).unwrap();
        let mut c = vec![TruncLaurent::one(field).add(&theta.mul(&binv)), binv.neg()];
        c.resize(nt + 1, TruncLaurent::zero(field, 1, EXACT));
        c.truncate(nt + 1);
        acc = acc.mul(&TSeries::new(c));
        i += 1;
    }
    acc.truncate_prec(prec)
        .with_growth(1)
        .expect("t^j coefficient has valuation >= q j")
}

/// `prod_{i >= 1} (1 - (x - theta)/[i])` at a point `t = x`; factors are
/// taken while they can differ from 1 below `theta^{-prec}`.
pub fn l1_product_at(x: &TruncLaurent, prec: i64) -> TruncLaurent {
    let field = x.field();
    let q = field.q() as i64;
    let theta = TruncLaurent::theta(field);
    let xm = x.sub(&theta);
    let one = TruncLaurent::one(field);
    if xm.is_zero() {
        let p = if xm.is_exact() {
            prec
        } else {
            prec.min(xm.prec() + q)
        };
        return one.truncate(p);
    }
    let dx = -xm.valuation();
    let mut acc = one.clone();
    let mut i = 1u32;
    while q.pow(i) - dx < prec || q.pow(i) <= dx {
        let b = TruncLaurent::from_apoly(&bracket(field, i).unwrap());
        let factor = one.sub(&xm.div(&b, prec + q.pow(i)).unwrap());
        acc = acc.mul(&factor);
        i += 1;
    }
    acc.truncate(prec)
}

/// `f_t(theta^{q^j}) = prod_{i > 0} (1 - t theta^{-q^{i+j}})` through `t^nt`,
/// known below `theta^{-prec}`, with growth certificate `q^{j+1}`.
pub fn mahler_f(field: &Arc<Field>, j: u32, nt: usize, prec: i64) -> TSeries {
    let q = field.q() as i64;
    let mut acc = TSeries::constant(TruncLaurent::one(field), nt);
    let mut i = 1u32;
    while q.pow(i + j) < prec {
        let mut c = vec![
            TruncLaurent::one(field),
            TruncLaurent::monomial(field, field.neg(Fe::ONE), -q.pow(i + j)),
        ];
        c.resize(nt + 1, TruncLaurent::zero(field, 1, EXACT));
        c.truncate(nt + 1);
        acc = acc.mul(&TSeries::new(c));
        i += 1;
    }
    acc.truncate_prec(prec)
        .with_growth(q.pow(j + 1) as u32)
        .expect("each factor has t-coefficient of valuation q^{j+1} or more")
}

/// `f_theta(theta) = prod_{i > 0} (1 - theta^{1 - q^i})` below `theta^{-prec}`.
pub fn mahler_f_theta_at_theta(field: &Arc<Field>, prec: i64) -> TruncLaurent {
    let n = prec.max(1) as usize;
    TruncLaurent::new(field, 1, 0, period_product(field, n), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u32) -> Arc<Field> {
        Field::prime_power(q, 1).unwrap()
    }

    /// Direct truncated product of `(1 - theta^{1-q^i})^{-(q-1)}` built from
    /// per-factor geometric series, compared against the packaged value.
    #[test]
    fn pi_qm1_matches_factorwise_product() {
        for q in [2u32, 3] {
            let fld = f(q);
            let prec = 20;
            let mut acc = TruncLaurent::monomial(&fld, fld.neg(Fe::ONE), q as i64);
            let mut i = 1;
            while (q as i64).pow(i) - 1 < prec + q as i64 {
                let e = (q as i64).pow(i) - 1;
                let factor =
                    TruncLaurent::one(&fld).sub(&TruncLaurent::monomial(&fld, Fe::ONE, -e));
                let inv = factor.inv(prec + q as i64 + 5).unwrap();
                acc = acc.mul(&inv.pow(q as u64 - 1));
                i += 1;
            }
            let pi = pi_qm1(&fld, prec);
            assert_eq!(pi.lead(), -(q as i64));
            assert!(pi.agrees_with(&acc));
            assert_eq!(pi.prec(), prec);
        }
    }

    #[test]
    fn pi_q2_leading_terms() {
        let fld = f(2);
        let pi = pi_qm1(&fld, 1);
        // theta^2 + theta + 1 + O(theta^{-1})
        assert_eq!(pi.lead(), -2);
        assert_eq!(pi.coeffs(), &[Fe(1), Fe(1), Fe(1)]);
    }

    #[test]
    fn exponential_kills_the_period_q2() {
        let fld = f(2);
        let pi = pi_qm1(&fld, 40);
        let e = carlitz_exp(&pi, 30).unwrap();
        assert!(e.is_zero());
        assert!(e.prec() >= 30);
        let zero = TruncLaurent::zero(&fld, 1, EXACT);
        assert!(carlitz_exp(&zero, 10).unwrap().is_zero());
    }

    #[test]
    fn exponential_kills_the_period_q3_with_root() {
        let fld = f(3);
        let b = PeriodBundle::new(&fld, 40, true);
        let root = b.pi_root.unwrap();
        let sq = root.pow(2);
        assert!(sq.as_base().unwrap().agrees_with(&b.pi_qm1));
        let e = carlitz_exp_root(&root, 25).unwrap();
        assert!(e.coords().iter().all(|c| c.is_zero() && c.prec() >= 25));
    }

    #[test]
    fn exponential_is_fq_linear() {
        let fld = f(3);
        let eta = TruncLaurent::new(&fld, 1, -2, vec![Fe(1), Fe(2), Fe(1)], 15);
        let a = carlitz_exp(&eta.scale(Fe(2)), 15).unwrap();
        let b = carlitz_exp(&eta, 15).unwrap().scale(Fe(2));
        assert!(a.agrees_with(&b));
    }

    #[test]
    fn sbar_leading_term_and_direct_sum() {
        let fld = f(2);
        let s = sbar(&fld, 3, 16);
        for j in 0..=3 {
            assert_eq!(s.coeff(j).lead(), j as i64 + 1);
        }
        // independent: e_Car(pi / theta^{j+1}) / pi for q = 2 (root-free).
        let pi = pi_qm1(&fld, 40);
        for j in 0..=3i64 {
            let eta = pi.mul_theta_pow(-(j + 1));
            let e = carlitz_exp(&eta, 30).unwrap();
            let want = e.div(&pi, 30).unwrap();
            assert!(s.coeff(j as usize).agrees_with(&want));
        }
    }

    #[test]
    fn sbar_tau_equation() {
        for q in [2u32, 3] {
            let fld = f(q);
            let prec = 24;
            let s = sbar(&fld, 5, prec);
            let pi = pi_qm1(&fld, prec + 2 * q as i64);
            let lhs = s.tau(1).scale(&pi);
            let rhs = s.mul_t_minus(&TruncLaurent::theta(&fld));
            let diff = lhs.sub(&rhs);
            assert!(diff.is_zero());
            assert!(diff.prec() >= prec - 1);
        }
    }

    #[test]
    fn specializations_at_theta() {
        for q in [2u32, 3] {
            let fld = f(q);
            let theta = TruncLaurent::theta(&fld);
            let v = t_minus_theta_sbar_at(&theta, 20).unwrap();
            assert!(v.agrees_with(&TruncLaurent::constant(&fld, fld.neg(Fe::ONE))));
            assert!(l1_product_at(&theta, 20).agrees_with(&TruncLaurent::one(&fld)));
            let tq = TruncLaurent::monomial(&fld, Fe::ONE, q as i64);
            let z = l1_product_at(&tq, 20);
            assert!(z.is_zero() && z.prec() >= 20);
        }
    }

    #[test]
    fn mahler_functional_equation_and_ratio() {
        for q in [2u32, 3] {
            let fld = f(q);
            let (nt, prec) = (6, 24);
            let f0 = mahler_f(&fld, 0, nt, prec);
            let f1 = mahler_f(&fld, 1, nt, prec);
            let mut c = vec![
                TruncLaurent::one(&fld),
                TruncLaurent::monomial(&fld, fld.neg(Fe::ONE), -(q as i64)),
            ];
            c.resize(nt + 1, TruncLaurent::zero(&fld, 1, EXACT));
            assert!(f0.sub(&f1.mul(&TSeries::new(c))).is_zero());
            assert!(f0.coeff(0).agrees_with(&TruncLaurent::one(&fld)));
            let ft = mahler_f_theta_at_theta(&fld, prec + 1);
            let ratio = f0.scale(&ft.inv(prec + 1).unwrap());
            let l1 = l1_product(&fld, nt, prec);
            assert!(ratio.sub(&l1).is_zero());
            assert!(ratio.sub(&l1).prec() >= prec);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn l1_factor_order_is_irrelevant(seed in 0u64..1000) {
            let fld = f(3);
            let (nt, prec) = (3usize, 12i64);
            let mut idx: Vec<u32> = (1..=2).collect();
            if seed % 2 == 1 { idx.reverse(); }
            let theta = TruncLaurent::theta(&fld);
            let mut acc = TSeries::constant(TruncLaurent::one(&fld), nt);
            for i in idx {
                let b = TruncLaurent::from_apoly(&bracket(&fld, i).unwrap());
                let binv = b.inv(prec + 1).unwrap();
                let mut c = vec![TruncLaurent::one(&fld).add(&theta.mul(&binv)), binv.neg()];
                c.resize(nt + 1, TruncLaurent::zero(&fld, 1, EXACT));
                acc = acc.mul(&TSeries::new(c));
            }
            prop_assert!(acc.sub(&l1_product(&fld, nt, prec)).is_zero());
        }
    }
}
