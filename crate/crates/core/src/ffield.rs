//! Finite fields `F_q`, `q = p^e`, and extensions `F_{q^r}`.
//!
//! An element is stored as a [`Fe`] code: the integer `sum c_i p^i` whose
//! base-`p` digits are its coordinates in the power basis of the modulus
//! root. Arithmetic goes through a [`Field`] context holding log/antilog
//! tables, so codes are plain `Copy` values. [`FqElem`] pairs a code with its
//! field for the checked API.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest field order accepted (tables are sized by it).
pub const MAX_ORDER: u64 = 1 << 16;

/// A field element code. Only meaningful together with its [`Field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// `F_p[x]/(modulus)` with `modulus` monic irreducible of degree `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    /// `e + 1` residues mod `p`, constant term first, last entry 1.
    pub modulus: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Small dense polynomials over F_p, used only while constructing fields.
mod fp {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        // p is prime, so a^(p-2).
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut k = p - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            k >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lc_inv = inv(m[dm], p);
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let c = (*r.last().unwrap() as u64 * lc_inv as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let v = (r[k + i] as u64 + (p - c) as u64 * mi as u64) % p as u64;
                r[k + i] = v as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let r: Vec<u32> = r.into_iter().map(|v| v as u32).collect();
        rem(&r, m, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut r: Vec<u32> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }

    /// Irreducibility over F_p: gcd(m, x^{p^i} - x) = 1 for 1 <= i <= deg/2.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let n = m.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut h = rem(&x, m, p);
        for _ in 1..=n / 2 {
            // h <- h^p mod m
            let mut acc = vec![1u32];
            let mut base = h.clone();
            let mut k = p;
            while k > 0 {
                if k & 1 == 1 {
                    acc = mulmod(&acc, &base, m, p);
                }
                base = mulmod(&base, &base, m, p);
                k >>= 1;
            }
            h = acc;
            let g = gcd(m, &sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl FieldSpec {
    /// Validates primality of `p`, shape of the modulus and irreducibility.
    pub fn new(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 || modulus.len() != e as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} entries",
                e as usize + 1
            )));
        }
        if modulus.iter().any(|&c| c >= p) || modulus[e as usize] != 1 {
            return Err(Error::InvalidField(
                "modulus must be monic with reduced entries".into(),
            ));
        }
        if !fp::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible over F_p".into()));
        }
        Ok(FieldSpec { p, e, modulus })
    }

    /// The lexicographically smallest monic irreducible of degree `n` over
    /// `F_p`, comparing coefficient vectors from `x^{n-1}` down to `x^0`.
    pub fn smallest(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        let total = (p as u64)
            .checked_pow(n)
            .filter(|&t| t <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("field of order {p}^{n} is too large")))?;
        for code in 0..total {
            let mut m = Vec::with_capacity(n as usize + 1);
            let mut c = code;
            for _ in 0..n {
                m.push((c % p as u64) as u32);
                c /= p as u64;
            }
            m.push(1);
            if fp::is_irreducible(&m, p) {
                return Ok(FieldSpec {
                    p,
                    e: n,
                    modulus: m,
                });
            }
        }
        unreachable!("an irreducible polynomial exists in every degree")
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }
}

/// Arithmetic context for `F_{p^n}` together with the distinguished subfield
/// `F_q`, `q = p^base_e`, whose Frobenius `x -> x^q` is [`Field::frob`].
#[derive(Debug)]
pub struct Field {
    spec: FieldSpec,
    base_e: u32,
    order: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    frob: Vec<u32>,
    neg: Vec<u32>,
    base: Vec<Fe>,
    add: Option<Vec<u16>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.base_e == other.base_e
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `F_q` itself (the Frobenius is `x -> x^{|F|}`, the identity).
    pub fn new(spec: FieldSpec) -> Result<Arc<Field>> {
        let e = spec.e;
        Self::with_base(spec, e)
    }

    /// The field `F_q`, `q = p^e`, on the smallest modulus.
    pub fn prime_power(p: u32, e: u32) -> Result<Arc<Field>> {
        Self::new(FieldSpec::smallest(p, e)?)
    }

    /// Builds the field of `spec` viewed as an extension of `F_{p^base_e}`.
    pub fn with_base(spec: FieldSpec, base_e: u32) -> Result<Arc<Field>> {
        if base_e == 0 || !spec.e.is_multiple_of(base_e) {
            return Err(Error::InvalidField(
                "base degree must divide the degree".into(),
            ));
        }
        let order64 = spec.order();
        if order64 > MAX_ORDER {
            return Err(Error::InvalidField(format!(
                "field order {order64} too large"
            )));
        }
        let order = order64 as u32;
        let p = spec.p;
        let n = spec.e as usize;
        let to_digits = |mut c: u32| -> Vec<u32> {
            let mut d = Vec::with_capacity(n);
            for _ in 0..n {
                d.push(c % p);
                c /= p;
            }
            fp::trim(&mut d);
            d
        };
        let from_digits = |d: &[u32]| -> u32 { d.iter().rev().fold(0u32, |acc, &x| acc * p + x) };
        // Search for a primitive element and record its powers.
        let mut exp = Vec::new();
        let mut log = vec![0u32; order as usize];
        if order == 2 {
            exp = vec![1];
        } else {
            for g in 2..order {
                let gd = to_digits(g);
                let mut powers = vec![1u32];
                let mut cur = vec![1u32];
                loop {
                    cur = fp::mulmod(&cur, &gd, &spec.modulus, p);
                    let c = from_digits(&cur);
                    if c == 1 {
                        break;
                    }
                    powers.push(c);
                }
                if powers.len() as u32 == order - 1 {
                    exp = powers;
                    break;
                }
            }
        }
        for (i, &c) in exp.iter().enumerate() {
            log[c as usize] = i as u32;
        }
        let m = order - 1;
        let mut exp2 = exp.clone();
        exp2.extend_from_slice(&exp);
        let q = p.pow(base_e);
        let frob = (0..order)
            .map(|c| {
                if c == 0 {
                    0
                } else {
                    exp[((log[c as usize] as u64 * q as u64) % m as u64) as usize]
                }
            })
            .collect::<Vec<u32>>();
        let neg = (0..order)
            .map(|c| {
                let d = to_digits(c);
                let nd: Vec<u32> = d.iter().map(|&x| (p - x) % p).collect();
                from_digits(&nd)
            })
            .collect::<Vec<u32>>();
        let base = (0..order)
            .filter(|&c| frob[c as usize] == c)
            .map(Fe)
            .collect();
        let mut field = Field {
            spec,
            base_e,
            order,
            q,
            exp: exp2,
            log,
            frob,
            neg,
            base,
            add: None,
        };
        if p != 2 && order <= 256 {
            let mut t = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = field.add_digits(a, b) as u16;
                }
            }
            field.add = Some(t);
        }
        Ok(Arc::new(field))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    /// `q`, the order of the distinguished subfield.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `e` with `q = p^e`.
    pub fn base_e(&self) -> u32 {
        self.base_e
    }

    /// Number of elements of the whole field.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `r` with `|F| = q^r`.
    pub fn ext_degree(&self) -> u32 {
        self.spec.e / self.base_e
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.spec.p;
        let mut r = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        r
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.spec.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        match &self.add {
            Some(t) => Fe(t[(a.0 * self.order + b.0) as usize] as u32),
            None => Fe(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let m = self.order - 1;
        Ok(Fe(self.exp[((m - self.log[a.0 as usize]) % m) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `pow(x, 0) = 1`.
    pub fn pow(&self, a: Fe, mut n: u64) -> Fe {
        let mut r = Fe::ONE;
        let mut b = a;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            n >>= 1;
        }
        r
    }

    /// `x -> x^q`.
    #[inline]
    pub fn frob(&self, a: Fe) -> Fe {
        Fe(self.frob[a.0 as usize])
    }

    /// `x -> x^{q^k}`.
    pub fn frob_k(&self, a: Fe, k: u32) -> Fe {
        let r = self.ext_degree();
        (0..k % r).fold(a, |x, _| self.frob(x))
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.spec.p as i64) as u32)
    }

    /// Power-basis coordinates of `a`.
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let p = self.spec.p;
        let mut c = a.0;
        (0..self.spec.e)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> Result<Fe> {
        let p = self.spec.p;
        if d.len() != self.spec.e as usize || d.iter().any(|&x| x >= p) {
            return Err(Error::InvalidArgument(
                "coordinates do not match the field".into(),
            ));
        }
        Ok(Fe(d.iter().rev().fold(0u32, |acc, &x| acc * p + x)))
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(Fe)
    }

    /// The elements of `F_q` (those fixed by [`Field::frob`]) in code order.
    pub fn base_elements(&self) -> &[Fe] {
        &self.base
    }

    /// An `n`-th root of `a`, the one with the smallest code.
    pub fn nth_root(&self, a: Fe, n: u64) -> Option<Fe> {
        self.elements().find(|&x| self.pow(x, n) == a)
    }

    /// `F_{q^r}` on the smallest modulus of degree `e r` over `F_p`, with the
    /// embedding of `self`. For `r = 1` this is `self` and the identity.
    pub fn extension(self: &Arc<Self>, r: u32) -> Result<(Arc<Field>, Embedding)> {
        if r == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be >= 1".into(),
            ));
        }
        if r == 1 {
            return Ok((self.clone(), Embedding::identity(self.clone())));
        }
        let spec = FieldSpec::smallest(self.spec.p, self.spec.e * r)?;
        let big = Field::with_base(spec, self.base_e)?;
        let emb = Embedding::new(self.clone(), big.clone())?;
        Ok((big, emb))
    }
}

/// Ring embedding `F_{p^n} -> F_{p^{nr}}` sending the modulus root of the
/// source to the smallest-code root of that modulus in the target.
#[derive(Debug, Clone)]
pub struct Embedding {
    from: Arc<Field>,
    to: Arc<Field>,
    table: Vec<Fe>,
}

impl Embedding {
    pub fn identity(f: Arc<Field>) -> Self {
        let table = f.elements().collect();
        Embedding {
            from: f.clone(),
            to: f,
            table,
        }
    }

    pub fn new(from: Arc<Field>, to: Arc<Field>) -> Result<Self> {
        if from.spec.p != to.spec.p || !to.spec.e.is_multiple_of(from.spec.e) {
            return Err(Error::FieldMismatch);
        }
        let m = &from.spec.modulus;
        let root = to
            .elements()
            .find(|&x| {
                let v = m.iter().rev().fold(Fe::ZERO, |acc, &c| {
                    to.add(to.mul(acc, x), to.from_int(c as i64))
                });
                v.is_zero()
            })
            .ok_or(Error::FieldMismatch)?;
        let table = from
            .elements()
            .map(|a| {
                from.digits(a).iter().rev().fold(Fe::ZERO, |acc, &c| {
                    to.add(to.mul(acc, root), to.from_int(c as i64))
                })
            })
            .collect();
        Ok(Embedding { from, to, table })
    }

    #[inline]
    pub fn map(&self, a: Fe) -> Fe {
        self.table[a.0 as usize]
    }

    pub fn source(&self) -> &Arc<Field> {
        &self.from
    }

    pub fn target(&self) -> &Arc<Field> {
        &self.to
    }
}

/// The binary operations of the checked element API.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

/// A field element that remembers its field.
#[derive(Clone, Debug)]
pub struct FqElem {
    pub field: Arc<Field>,
    pub value: Fe,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.value == other.value
    }
}

impl FqElem {
    pub fn new(field: &Arc<Field>, value: Fe) -> Self {
        FqElem {
            field: field.clone(),
            value,
        }
    }

    /// Coordinates in the power basis, as serialized.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    pub fn frobenius(&self) -> FqElem {
        FqElem::new(&self.field, self.field.frob(self.value))
    }
}

/// Checked arithmetic: `y` is ignored for `Inv` and `Pow`.
pub fn fq_arith(x: &FqElem, y: &FqElem, op: FqOp) -> Result<FqElem> {
    if *x.field != *y.field {
        return Err(Error::FieldMismatch);
    }
    let f = &x.field;
    let v = match op {
        FqOp::Add => f.add(x.value, y.value),
        FqOp::Mul => f.mul(x.value, y.value),
        FqOp::Inv => f.inv(x.value)?,
        FqOp::Pow(n) => f.pow(x.value, n),
    };
    Ok(FqElem::new(f, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<Field> {
        Field::prime_power(2, 2).unwrap()
    }

    #[test]
    fn f4_modulus_is_x2_x_1() {
        assert_eq!(FieldSpec::smallest(2, 2).unwrap().modulus, vec![1, 1, 1]);
    }

    #[test]
    fn f4_products() {
        let f = f4();
        // x = code 2, x+1 = code 3
        assert_eq!(f.mul(Fe(2), Fe(3)), Fe::ONE);
        assert_eq!(f.frob(Fe(2)), Fe(2));
        let (f4_over_f2, _) = Field::prime_power(2, 1).unwrap().extension(2).unwrap();
        assert_eq!(f4_over_f2.frob(Fe(2)), Fe(3));
        assert_eq!(f4_over_f2.frob(Fe::ZERO), Fe::ZERO);
        assert_eq!(f.inv(Fe::ONE).unwrap(), Fe::ONE);
        assert_eq!(f.pow(Fe(2), 0), Fe::ONE);
    }

    #[test]
    fn inverse_of_zero_errors() {
        let f = f4();
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
        let z = FqElem::new(&f, Fe::ZERO);
        let err = fq_arith(&z, &z, FqOp::Inv).unwrap_err();
        assert_eq!(
            alloc::string::ToString::to_string(&err),
            "division by zero in F_q"
        );
    }

    #[test]
    fn mismatched_fields_error() {
        let a = FqElem::new(&f4(), Fe(1));
        let b = FqElem::new(&Field::prime_power(3, 1).unwrap(), Fe(1));
        assert_eq!(fq_arith(&a, &b, FqOp::Add), Err(Error::FieldMismatch));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(FieldSpec::new(2, 2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::new(4, 1, vec![0, 1]).is_err());
        assert!(FieldSpec::new(3, 2, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn frobenius_fixes_base_field_and_has_order_r() {
        let f3 = Field::prime_power(3, 1).unwrap();
        let (f27, emb) = f3.extension(3).unwrap();
        for c in f3.elements() {
            let img = emb.map(c);
            assert_eq!(f27.frob(img), img);
        }
        for x in f27.elements() {
            assert_eq!(f27.frob_k(x, 3), x);
            assert_eq!(f27.frob(f27.frob(f27.frob(x))), x);
        }
        assert_eq!(f27.q(), 3);
        assert_eq!(f27.ext_degree(), 3);
    }

    #[test]
    fn extension_is_deterministic_and_embeds_one() {
        let f4 = f4();
        let (a, ea) = f4.extension(2).unwrap();
        let (b, _) = f4.extension(2).unwrap();
        assert_eq!(a.spec(), b.spec());
        assert_eq!(ea.map(Fe::ONE), Fe::ONE);
        let (same, _) = f4.extension(1).unwrap();
        assert_eq!(same.spec(), f4.spec());
        // embedding is a ring homomorphism
        for x in f4.elements() {
            for y in f4.elements() {
                assert_eq!(ea.map(f4.mul(x, y)), a.mul(ea.map(x), ea.map(y)));
                assert_eq!(ea.map(f4.add(x, y)), a.add(ea.map(x), ea.map(y)));
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2, 3), (3, 2), (5, 1)] {
            let f = Field::prime_power(p, e).unwrap();
            for x in f.elements() {
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe::ONE);
                }
                assert_eq!(f.add(x, f.neg(x)), Fe::ZERO);
                for y in f.elements() {
                    assert_eq!(f.frob(f.mul(x, y)), f.mul(f.frob(x), f.frob(y)));
                    assert_eq!(f.frob(f.add(x, y)), f.add(f.frob(x), f.frob(y)));
                }
            }
        }
    }
}
