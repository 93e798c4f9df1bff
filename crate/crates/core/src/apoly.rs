//! The ring `A = F_q[theta]`, its monic elements, brackets, Carlitz
//! factorials and the Carlitz action `a -> C_a`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exact::TTPoly;
use crate::ffield::{Fe, Field};
use crate::upoly;
use crate::{Error, Result};

/// A polynomial in `theta` over `F_q`.
#[derive(Clone, Debug)]
pub struct APoly {
    field: Arc<Field>,
    coeffs: Vec<Fe>,
}

impl PartialEq for APoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for APoly {}

impl APoly {
    pub fn new(field: &Arc<Field>, mut coeffs: Vec<Fe>) -> Self {
        upoly::trim(&mut coeffs);
        APoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &Arc<Field>, c: Fe) -> Self {
        Self::new(field, vec![c])
    }

    pub fn one(field: &Arc<Field>) -> Self {
        Self::constant(field, Fe::ONE)
    }

    pub fn theta(field: &Arc<Field>) -> Self {
        Self::new(field, vec![Fe::ZERO, Fe::ONE])
    }

    /// `theta^k`.
    pub fn monomial(field: &Arc<Field>, k: usize) -> Self {
        let mut c = vec![Fe::ZERO; k + 1];
        c[k] = Fe::ONE;
        Self::new(field, c)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fe::ONE)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn add(&self, o: &APoly) -> APoly {
        APoly::new(
            &self.field,
            upoly::add(&self.field, &self.coeffs, &o.coeffs),
        )
    }

    pub fn sub(&self, o: &APoly) -> APoly {
        APoly::new(
            &self.field,
            upoly::sub(&self.field, &self.coeffs, &o.coeffs),
        )
    }

    pub fn neg(&self) -> APoly {
        APoly::new(&self.field, upoly::neg(&self.field, &self.coeffs))
    }

    pub fn mul(&self, o: &APoly) -> APoly {
        APoly::new(
            &self.field,
            upoly::mul(&self.field, &self.coeffs, &o.coeffs),
        )
    }

    pub fn scale(&self, c: Fe) -> APoly {
        APoly::new(&self.field, upoly::scale(&self.field, &self.coeffs, c))
    }

    pub fn pow(&self, n: u64) -> APoly {
        APoly::new(&self.field, upoly::pow(&self.field, &self.coeffs, n))
    }

    pub fn divrem(&self, o: &APoly) -> Result<(APoly, APoly)> {
        let (q, r) = upoly::divrem(&self.field, &self.coeffs, &o.coeffs)?;
        Ok((APoly::new(&self.field, q), APoly::new(&self.field, r)))
    }

    pub fn gcd(&self, o: &APoly) -> APoly {
        APoly::new(
            &self.field,
            upoly::gcd(&self.field, &self.coeffs, &o.coeffs),
        )
    }

    pub fn eval(&self, x: Fe) -> Fe {
        upoly::eval(&self.field, &self.coeffs, x)
    }

    /// `theta -> theta^{q^k}`, which on `A` is also `a -> a^{q^k}`.
    pub fn tau(&self, k: u32) -> APoly {
        let q = self.field.q() as usize;
        let c: Vec<Fe> = self
            .coeffs
            .iter()
            .map(|&c| self.field.frob_k(c, k))
            .collect();
        APoly::new(&self.field, upoly::inflate(&c, q.pow(k)))
    }

    /// `chi_t(a) = a(t)`.
    pub fn chi_t(&self) -> TTPoly {
        TTPoly::from_t_poly(&self.field, &self.coeffs)
    }

    /// Position of a monic polynomial in [`monic_iter`] order.
    pub fn monic_code(&self) -> u64 {
        let q = self.field.q() as u64;
        let base = self.field.base_elements();
        let d = self.coeffs.len().saturating_sub(1);
        self.coeffs[..d].iter().rev().fold(0u64, |acc, c| {
            acc * q + base.iter().position(|b| b == c).unwrap() as u64
        })
    }
}

/// The monic polynomial of degree `d` whose coefficient of `theta^i` is the
/// `F_q` element indexed by the `i`-th base-`q` digit of `code`.
pub fn monic_from_code(field: &Arc<Field>, d: usize, mut code: u64) -> APoly {
    let q = field.q() as u64;
    let base = field.base_elements();
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push(base[(code % q) as usize]);
        code /= q;
    }
    c.push(Fe::ONE);
    APoly::new(field, c)
}

/// All `q^d` monic polynomials of degree `d`, lexicographic in the
/// coefficient vector read from `theta^{d-1}` down.
pub fn monic_iter(field: &Arc<Field>, d: usize) -> impl Iterator<Item = APoly> + '_ {
    let count = (field.q() as u64).pow(d as u32);
    (0..count).map(move |code| monic_from_code(field, d, code))
}

/// `[i] = theta^{q^i} - theta`.
pub fn bracket(field: &Arc<Field>, i: u32) -> Result<APoly> {
    if i == 0 {
        return Err(Error::InvalidArgument(
            "bracket index must be positive".into(),
        ));
    }
    let q = field.q() as usize;
    Ok(APoly::monomial(field, q.pow(i)).sub(&APoly::theta(field)))
}

/// `d_0 = 1`, `d_n = [n] d_{n-1}^q`.
pub fn carlitz_d(field: &Arc<Field>, n: u32) -> APoly {
    let mut d = APoly::one(field);
    for i in 1..=n {
        d = bracket(field, i).unwrap().mul(&d.tau(1));
    }
    d
}

/// An `F_q`-linear polynomial `X -> sum_i coeffs[i] X^{q^i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauLinPoly {
    pub coeffs: Vec<APoly>,
}

impl TauLinPoly {
    /// `(sum a_i tau^i) o (sum b_j tau^j) = sum a_i b_j^{q^i} tau^{i+j}`.
    pub fn compose(&self, o: &TauLinPoly) -> TauLinPoly {
        let field = &self.coeffs[0].field;
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut c = vec![APoly::zero(field); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(&b.tau(i as u32)));
            }
        }
        TauLinPoly::trimmed(c, field)
    }

    fn trimmed(mut c: Vec<APoly>, field: &Arc<Field>) -> TauLinPoly {
        while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        if c.is_empty() {
            c.push(APoly::zero(field));
        }
        TauLinPoly { coeffs: c }
    }

    /// Evaluates at an element of `A`.
    pub fn apply(&self, x: &APoly) -> APoly {
        let field = &self.coeffs[0].field;
        self.coeffs
            .iter()
            .enumerate()
            .fold(APoly::zero(field), |acc, (i, a)| {
                acc.add(&a.mul(&x.tau(i as u32)))
            })
    }
}

/// `C_a`, by Horner's rule with `C_theta = theta + tau`.
pub fn carlitz_action(a: &APoly) -> TauLinPoly {
    let field = &a.field;
    let Some(d) = a.degree() else {
        return TauLinPoly {
            coeffs: vec![APoly::zero(field)],
        };
    };
    let mut c = vec![APoly::constant(field, a.coeff(d))];
    for k in (0..d).rev() {
        // C_theta o C = theta C + tau C
        let mut next = vec![APoly::zero(field); c.len() + 1];
        for (j, b) in c.iter().enumerate() {
            next[j] = next[j].add(&b.mul(&APoly::theta(field)));
            next[j + 1] = next[j + 1].add(&b.tau(1));
        }
        next[0] = next[0].add(&APoly::constant(field, a.coeff(k)));
        c = next;
    }
    TauLinPoly::trimmed(c, field)
}

/// Irreducibility over `F_q` by `gcd(a, theta^{q^i} - theta) = 1`, `i <= d/2`.
pub fn is_irreducible(a: &APoly) -> bool {
    let Some(d) = a.degree() else { return false };
    if d == 0 {
        return false;
    }
    let theta = APoly::theta(&a.field);
    let mut h = theta.clone();
    let q = a.field.q() as u64;
    for _ in 1..=d / 2 {
        // h <- h^q mod a
        let mut acc = APoly::one(&a.field);
        let mut b = h.clone();
        let mut k = q;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b).divrem(a).unwrap().1;
            }
            b = b.mul(&b).divrem(a).unwrap().1;
            k >>= 1;
        }
        h = acc;
        if h.sub(&theta).gcd(a).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Monic irreducibles of degree `d` in [`monic_iter`] order.
pub fn irreducible_monics(field: &Arc<Field>, d: usize) -> Vec<APoly> {
    monic_iter(field, d).filter(is_irreducible).collect()
}

/// Number of monic irreducibles of degree `d` over `F_q`:
/// `(1/d) sum_{k | d} mu(k) q^{d/k}`.
pub fn necklace_count(q: u64, d: u32) -> u64 {
    fn mobius(mut n: u32) -> i64 {
        let mut r = 1i64;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                r = -r;
            }
            p += 1;
        }
        if n > 1 {
            r = -r;
        }
        r
    }
    let s: i128 = (1..=d)
        .filter(|k| d.is_multiple_of(*k))
        .map(|k| mobius(k) as i128 * (q as i128).pow(d / k))
        .sum();
    (s / d as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fq(q: u32) -> Arc<Field> {
        match q {
            2 => Field::prime_power(2, 1).unwrap(),
            3 => Field::prime_power(3, 1).unwrap(),
            4 => Field::prime_power(2, 2).unwrap(),
            _ => unreachable!(),
        }
    }

    fn ap(f: &Arc<Field>, c: &[u32]) -> APoly {
        APoly::new(f, c.iter().map(|&x| Fe(x)).collect())
    }

    #[test]
    fn monic_listing() {
        let f = fq(2);
        let d0: Vec<_> = monic_iter(&f, 0).collect();
        assert_eq!(d0, vec![APoly::one(&f)]);
        let d1: Vec<_> = monic_iter(&f, 1).collect();
        assert_eq!(d1, vec![ap(&f, &[0, 1]), ap(&f, &[1, 1])]);
        assert_eq!(monic_iter(&fq(3), 2).count(), 9);
        for a in monic_iter(&fq(3), 3) {
            assert_eq!(monic_from_code(a.field(), 3, a.monic_code()), a);
        }
    }

    #[test]
    fn chi_t_values() {
        let f = fq(3);
        assert_eq!(APoly::one(&f).chi_t(), TTPoly::one(&f));
        assert_eq!(APoly::theta(&f).chi_t(), TTPoly::t(&f));
        let a = ap(&f, &[1, 0, 1]);
        assert_eq!(a.chi_t(), TTPoly::t(&f).pow(2).add(&TTPoly::one(&f)));
    }

    #[test]
    fn brackets_and_factorials() {
        let f2 = fq(2);
        assert_eq!(bracket(&f2, 1).unwrap(), ap(&f2, &[0, 1, 1]));
        assert_eq!(bracket(&f2, 2).unwrap(), ap(&f2, &[0, 1, 0, 0, 1]));
        let f3 = fq(3);
        assert_eq!(bracket(&f3, 1).unwrap(), ap(&f3, &[0, 2, 0, 1]));
        assert!(bracket(&f3, 0).is_err());
        assert_eq!(carlitz_d(&f3, 0), APoly::one(&f3));
        assert_eq!(carlitz_d(&f3, 1), bracket(&f3, 1).unwrap());
        let b1 = bracket(&f3, 1).unwrap();
        let d2 = bracket(&f3, 2).unwrap().mul(&b1.pow(3));
        assert_eq!(carlitz_d(&f3, 2), d2);
    }

    #[test]
    fn carlitz_action_small_cases() {
        let f = fq(3);
        let one = carlitz_action(&APoly::one(&f));
        assert_eq!(one.coeffs, vec![APoly::one(&f)]);
        let th = carlitz_action(&APoly::theta(&f));
        assert_eq!(th.coeffs, vec![APoly::theta(&f), APoly::one(&f)]);
        let th2 = carlitz_action(&APoly::monomial(&f, 2));
        let theta = APoly::theta(&f);
        assert_eq!(
            th2.coeffs,
            vec![theta.pow(2), theta.tau(1).add(&theta), APoly::one(&f)]
        );
    }

    #[test]
    fn irreducibles_small() {
        let f2 = fq(2);
        assert_eq!(irreducible_monics(&f2, 1).len(), 2);
        assert_eq!(irreducible_monics(&f2, 2), vec![ap(&f2, &[1, 1, 1])]);
        assert_eq!(irreducible_monics(&fq(3), 2).len(), 3);
        for (q, d) in [(2u32, 5usize), (3, 4), (4, 3)] {
            let f = fq(q);
            assert_eq!(
                irreducible_monics(&f, d).len() as u64,
                necklace_count(q as u64, d as u32)
            );
        }
    }

    fn arb_apoly(q: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..q, 0..max_len)
    }

    #[test]
    fn monics_over_a_subfield_use_subfield_coefficients() {
        let (f4, _) = fq(2).extension(2).unwrap();
        let all: Vec<APoly> = monic_iter(&f4, 2).collect();
        assert_eq!(all.len(), 4);
        for (k, a) in all.iter().enumerate() {
            assert!(a.coeffs().iter().all(|&c| f4.frob(c) == c));
            assert_eq!(a.monic_code(), k as u64);
        }
    }

    proptest! {
        #[test]
        fn chi_t_is_a_ring_homomorphism(a in arb_apoly(4, 6), b in arb_apoly(4, 6)) {
            let f = fq(4);
            let (a, b) = (ap(&f, &a), ap(&f, &b));
            prop_assert_eq!(a.mul(&b).chi_t(), a.chi_t().mul(&b.chi_t()));
            prop_assert_eq!(a.add(&b).chi_t(), a.chi_t().add(&b.chi_t()));
        }

        #[test]
        fn carlitz_action_is_multiplicative(a in arb_apoly(3, 4), b in arb_apoly(3, 4)) {
            let f = fq(3);
            let (a, b) = (ap(&f, &a), ap(&f, &b));
            prop_assert_eq!(carlitz_action(&a.mul(&b)), carlitz_action(&a).compose(&carlitz_action(&b)));
            prop_assert_eq!(carlitz_action(&a.add(&b)).apply(&APoly::theta(&f)),
                carlitz_action(&a).apply(&APoly::theta(&f)).add(&carlitz_action(&b).apply(&APoly::theta(&f))));
        }

        #[test]
        fn monic_action_has_monic_top(a in arb_apoly(3, 4)) {
            let f = fq(3);
            let mut c: Vec<Fe> = a.iter().map(|&x| Fe(x)).collect();
            c.push(Fe::ONE);
            let a = APoly::new(&f, c);
            let top = carlitz_action(&a).coeffs.last().unwrap().clone();
            prop_assert_eq!(top, APoly::one(&f));
            prop_assert_eq!(carlitz_action(&a).coeffs.len(), a.degree().unwrap() + 1);
        }
    }
}
