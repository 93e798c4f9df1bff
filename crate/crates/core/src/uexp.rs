//! Exact u-expansions of Drinfeld modular forms over `F_q(t, theta)`: Goss
//! polynomials, `u_a`, the ratios `zeta(w) / pi^w`, normalized Eisenstein
//! series, `g`, `Delta`, `h`, the twist `tau` on u-series, the series `d_2`
//! and the sums `f_alpha = sum_{c monic} chi_t(c) G_alpha(u_c)`.
//!
//! Sums over `c` are formed as power sums `sum_c w(c) u_c^n` with polynomial
//! coefficients and only then combined with the rational coefficients of the
//! Goss polynomial. Every `c` of degree `>= Dc` has `u_c = O(u^{Nu + 1})`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::apoly::{carlitz_action, carlitz_d, monic_iter, APoly};
use crate::exact::{tau_exact, RatFunc, TTPoly};
use crate::ffield::{Fe, Field};
use crate::ring::{pseries, RatFuncs, TTPolys};
use crate::{Error, Result};

/// `sum_{i <= Nu} c_i u^i`, optionally tagged with a weight and a type
/// `m mod (q - 1)`; a tagged series vanishes at every `i != m mod (q - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct USeries {
    field: Arc<Field>,
    coeffs: Vec<RatFunc>,
    weight: Option<u64>,
    utype: Option<u32>,
}

impl USeries {
    /// Series known through `u^{coeffs.len() - 1}`; `coeffs` is nonempty.
    pub fn new(field: &Arc<Field>, coeffs: Vec<RatFunc>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a u-series needs at least one coefficient"
        );
        USeries {
            field: field.clone(),
            coeffs,
            weight: None,
            utype: None,
        }
    }

    pub fn from_polys(field: &Arc<Field>, coeffs: Vec<TTPoly>) -> Self {
        Self::new(field, coeffs.into_iter().map(RatFunc::from_poly).collect())
    }

    pub fn zero(field: &Arc<Field>, nu: usize) -> Self {
        Self::new(field, vec![RatFunc::zero(field); nu + 1])
    }

    pub fn constant(c: RatFunc, nu: usize) -> Self {
        let field = c.field().clone();
        let mut v = vec![RatFunc::zero(&field); nu + 1];
        v[0] = c;
        Self::new(&field, v)
    }

    pub fn one(field: &Arc<Field>, nu: usize) -> Self {
        Self::constant(RatFunc::one(field), nu)
    }

    /// The uniformizer `u` itself.
    pub fn u(field: &Arc<Field>, nu: usize) -> Self {
        let mut s = Self::zero(field, nu);
        if nu >= 1 {
            s.coeffs[1] = RatFunc::one(field);
        }
        s
    }

    /// Attaches weight and type after checking the type support.
    pub fn tagged(mut self, weight: u64, utype: u32) -> Result<Self> {
        let m = self.field.q() as usize - 1;
        let ty = utype as usize % m;
        if let Some(i) = (0..self.coeffs.len()).find(|&i| i % m != ty && !self.coeffs[i].is_zero())
        {
            return Err(Error::InvalidArgument(alloc::format!(
                "coefficient of u^{i} breaks type {ty}"
            )));
        }
        self.weight = Some(weight);
        self.utype = Some(ty as u32);
        Ok(self)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn nu(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RatFunc {
        &self.coeffs[i]
    }

    pub fn weight(&self) -> Option<u64> {
        self.weight
    }

    pub fn utype(&self) -> Option<u32> {
        self.utype
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Whether every coefficient lies in `F_q[t, theta]`.
    pub fn is_poly(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_poly)
    }

    fn untagged(field: &Arc<Field>, coeffs: Vec<RatFunc>) -> Self {
        Self::new(field, coeffs)
    }

    fn same_tag(&self, o: &USeries) -> (Option<u64>, Option<u32>) {
        if self.weight == o.weight && self.utype == o.utype {
            (self.weight, self.utype)
        } else {
            (None, None)
        }
    }

    pub fn truncate(&self, nu: usize) -> USeries {
        let mut s = self.clone();
        s.coeffs.truncate(nu + 1);
        s
    }

    pub fn add(&self, o: &USeries) -> USeries {
        let n = self.nu().min(o.nu()) + 1;
        let (weight, utype) = self.same_tag(o);
        USeries {
            coeffs: pseries::add(&RatFuncs(self.field.clone()), &self.coeffs, &o.coeffs, n),
            weight,
            utype,
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &USeries) -> USeries {
        let n = self.nu().min(o.nu()) + 1;
        let (weight, utype) = self.same_tag(o);
        USeries {
            coeffs: pseries::sub(&RatFuncs(self.field.clone()), &self.coeffs, &o.coeffs, n),
            weight,
            utype,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> USeries {
        USeries {
            coeffs: self.coeffs.iter().map(RatFunc::neg).collect(),
            ..self.clone()
        }
    }

    /// Multiplies by a `u`-free value; the tag is dropped.
    pub fn scale(&self, c: &RatFunc) -> USeries {
        Self::untagged(&self.field, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    /// Product known through `u^{min(Nu)}`; weights and types add.
    pub fn mul(&self, o: &USeries) -> USeries {
        let n = self.nu().min(o.nu()) + 1;
        let m = self.field.q() - 1;
        USeries {
            coeffs: pseries::mul(&RatFuncs(self.field.clone()), &self.coeffs, &o.coeffs, n),
            weight: self.weight.zip(o.weight).map(|(a, b)| a + b),
            utype: self.utype.zip(o.utype).map(|(a, b)| (a + b) % m),
            ..self.clone()
        }
    }

    pub fn pow(&self, k: u64) -> USeries {
        let n = self.nu() + 1;
        let m = self.field.q() as u64 - 1;
        USeries {
            coeffs: pseries::pow(&RatFuncs(self.field.clone()), &self.coeffs, k, n),
            weight: self.weight.map(|w| w * k),
            utype: self.utype.map(|t| ((t as u64 * k) % m) as u32),
            ..self.clone()
        }
    }

    /// Inverse; the constant coefficient must be nonzero.
    pub fn inv(&self) -> Result<USeries> {
        let n = self.nu() + 1;
        let coeffs = pseries::inv(&RatFuncs(self.field.clone()), &self.coeffs, n)?;
        Ok(Self::untagged(&self.field, coeffs))
    }
}

/// `tau^k`: `u^i -> u^{q^k i}` and coefficients through [`tau_exact`]. The
/// result is known through `u^{q^k (Nu + 1) - 1}`.
pub fn useries_tau(f: &USeries, k: u32) -> USeries {
    let q = f.field.q() as usize;
    let s = q.pow(k);
    let mut coeffs = vec![RatFunc::zero(&f.field); s * (f.nu() + 1)];
    for (i, c) in f.coeffs.iter().enumerate() {
        coeffs[s * i] = tau_exact(c, k);
    }
    USeries {
        field: f.field.clone(),
        coeffs,
        weight: f.weight.map(|w| w * s as u64),
        utype: f.utype,
    }
}

/// Smallest `D` with `q^D >= Nu + 1`: monics of degree `>= D` do not reach
/// `u^Nu`.
pub fn degree_cutoff(q: u32, nu: usize) -> usize {
    let mut d = 0;
    let mut p = 1usize;
    while p < nu + 1 {
        p *= q as usize;
        d += 1;
    }
    d
}

/// `e(x) = sum_j x^{q^j} / d_j` modulo `x^n`, coefficients in `F_q(theta)`.
fn carlitz_exp_series(field: &Arc<Field>, n: usize) -> Vec<RatFunc> {
    let q = field.q() as usize;
    let mut c = vec![RatFunc::zero(field); n];
    let mut j = 0u32;
    while q.pow(j) < n {
        let d = TTPoly::from_theta_poly(field, carlitz_d(field, j).coeffs());
        c[q.pow(j)] = RatFunc::from_poly(d).inv().expect("d_j is nonzero");
        j += 1;
    }
    c
}

/// The Goss polynomial `G_k` as its coefficients of `u^0, ..., u^k`:
/// `G_k = sum_{n < k} u^{n+1} [x^{k-1}] e(x)^n`.
pub fn goss_poly(field: &Arc<Field>, k: usize) -> Result<Vec<RatFunc>> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "Goss polynomials start at k = 1".into(),
        ));
    }
    let r = RatFuncs(field.clone());
    let e = carlitz_exp_series(field, k);
    let mut g = vec![RatFunc::zero(field); k + 1];
    let mut en = vec![RatFunc::one(field)];
    en.resize(k, RatFunc::zero(field));
    for n in 0..k {
        g[n + 1] = en[k - 1].clone();
        en = pseries::mul(&r, &en, &e, k);
    }
    Ok(g)
}

/// `u_a = u^{|a|} / f_a(u)` through `u^nu` with `f_a(u) = u^{|a|} C_a(1/u)`,
/// coefficients in `A`.
fn u_a_polys(a: &APoly, nu: usize) -> Result<Vec<TTPoly>> {
    let field = a.field();
    let d = a
        .degree()
        .ok_or_else(|| Error::InvalidArgument("u_a needs a != 0".into()))?;
    let q = field.q() as usize;
    let big = q.pow(d as u32);
    let mut out = vec![TTPoly::zero(field); nu + 1];
    if big > nu {
        return Ok(out);
    }
    let ca = carlitz_action(a);
    let n = nu + 1 - big;
    let mut fa = vec![TTPoly::zero(field); n];
    for (i, c) in ca.coeffs.iter().enumerate() {
        let e = big - q.pow(i as u32);
        if e < n {
            fa[e] = TTPoly::from_theta_poly(field, c.coeffs());
        }
    }
    let inv = pseries::inv(&TTPolys(field.clone()), &fa, n)?;
    for (i, c) in inv.into_iter().enumerate() {
        out[big + i] = c;
    }
    Ok(out)
}

/// `u_a(z) = u(a z)` through `u^nu`.
pub fn u_a(a: &APoly, nu: usize) -> Result<USeries> {
    Ok(USeries::from_polys(a.field(), u_a_polys(a, nu)?))
}

/// `zeta(w) / pi^w = [z^w] z / e(z)` for `w` a positive multiple of `q - 1`.
pub fn bc_ratio(field: &Arc<Field>, w: usize) -> Result<RatFunc> {
    let m = field.q() as usize - 1;
    if w == 0 || !w.is_multiple_of(m) {
        return Err(Error::InvalidArgument(alloc::format!(
            "weight {w} is not a positive multiple of q - 1"
        )));
    }
    // e(z) / z
    let e = carlitz_exp_series(field, w + 2);
    let inv = pseries::inv(&RatFuncs(field.clone()), &e[1..], w + 1)?;
    Ok(inv[w].clone())
}

/// `S_n = sum_{c monic, deg c < dc} w(c) u_c^n` for `n = 0..=nmax`, through
/// `u^nu`.
fn power_sums(
    field: &Arc<Field>,
    nu: usize,
    nmax: usize,
    dc: usize,
    weight: impl Fn(&APoly) -> TTPoly,
) -> Result<Vec<Vec<TTPoly>>> {
    let r = TTPolys(field.clone());
    let q = field.q() as usize;
    let mut sums = vec![vec![TTPoly::zero(field); nu + 1]; nmax + 1];
    for d in 0..dc {
        let step = q.pow(d as u32);
        if step > nu {
            break;
        }
        for c in monic_iter(field, d) {
            let uc = u_a_polys(&c, nu)?;
            let w = weight(&c);
            let mut p = uc.clone();
            for (n, s) in sums.iter_mut().enumerate().skip(1) {
                if n * step > nu {
                    break;
                }
                for (si, pi) in s.iter_mut().zip(&p) {
                    if !pi.is_zero() {
                        *si = si.add(&pi.mul(&w));
                    }
                }
                p = pseries::mul(&r, &p, &uc, nu + 1);
            }
        }
    }
    Ok(sums)
}

/// `sum_n G[n] S_n`.
fn apply_goss(field: &Arc<Field>, g: &[RatFunc], sums: &[Vec<TTPoly>], nu: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(field); nu + 1];
    for (gn, s) in g.iter().zip(sums).skip(1) {
        if gn.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(s) {
            if !c.is_zero() {
                *o = o.add(&gn.mul_poly(c));
            }
        }
    }
    out
}

/// `E_w = 1 + (pi^w / zeta(w)) sum_{c monic, deg c <= dc} G_w(u_c)`, the
/// Eisenstein series of weight `w` and type 0 with constant term 1.
pub fn eisenstein_with_cutoff(
    field: &Arc<Field>,
    w: usize,
    nu: usize,
    dc: usize,
) -> Result<USeries> {
    let bc = bc_ratio(field, w)?;
    let g = goss_poly(field, w)?;
    let sums = power_sums(field, nu, w, dc + 1, |_| TTPoly::one(field))?;
    let mut c = apply_goss(field, &g, &sums, nu);
    let s = bc.inv()?;
    for x in c.iter_mut() {
        *x = x.mul(&s);
    }
    c[0] = c[0].add(&RatFunc::one(field));
    USeries::new(field, c).tagged(w as u64, 0)
}

/// [`eisenstein_with_cutoff`] at `Dc = ceil(log_q(Nu + 1))`.
pub fn eisenstein(field: &Arc<Field>, w: usize, nu: usize) -> Result<USeries> {
    eisenstein_with_cutoff(field, w, nu, degree_cutoff(field.q(), nu))
}

/// `g = E_{q-1}`, weight `q - 1`, type 0.
pub fn modular_g(field: &Arc<Field>, nu: usize) -> Result<USeries> {
    eisenstein(field, field.q() as usize - 1, nu)
}

/// `Delta` in the span of `E_{q^2-1}` and `g^{q+1}`, scaled so that its
/// `u^{q-1}` coefficient is `-(-1)^{q-1}`.
pub fn modular_delta(field: &Arc<Field>, nu: usize) -> Result<USeries> {
    let q = field.q() as usize;
    let nu = nu.max(q - 1);
    let e = eisenstein(field, q * q - 1, nu)?;
    let g = modular_g(field, nu)?;
    let diff = e.sub(&g.pow(q as u64 + 1));
    let lead = diff.coeff(q - 1);
    if lead.is_zero() {
        return Err(Error::NormalizationFailed);
    }
    // -(-1)^{q-1} = -1 in every characteristic
    let target = RatFunc::one(field).neg();
    let s = target.div(lead)?;
    diff.scale(&s).tagged((q * q - 1) as u64, 0)
}

/// `h = -u R` with `R^{q-1} = -Delta / (-u)^{q-1}` and `R(0) = 1`, so that
/// `h^{q-1} = -Delta`; weight `q + 1`, type 1.
pub fn modular_h(field: &Arc<Field>, nu: usize) -> Result<USeries> {
    let q = field.q() as usize;
    let r = RatFuncs(field.clone());
    let delta = modular_delta(field, nu + q - 2)?;
    // -Delta / (-u)^{q-1} = -Delta / u^{q-1}, since (-1)^{q-1} = 1
    let n = nu;
    let shifted: Vec<RatFunc> = (0..n).map(|i| delta.coeff(i + q - 1).neg()).collect();
    if !shifted.first().is_none_or(|c| c.is_one()) {
        return Err(Error::NormalizationFailed);
    }
    let root = if n == 0 {
        Vec::new()
    } else {
        pseries::root_one(&r, &shifted, q as u64 - 1, n)?
    };
    let mut coeffs = vec![RatFunc::zero(field); nu + 1];
    for (i, c) in root.into_iter().enumerate() {
        coeffs[i + 1] = c.neg();
    }
    USeries::new(field, coeffs).tagged(q as u64 + 1, 1)
}

/// The solution `X = sum_i c_i u^{(q-1) i}`, `c_0 = 1`, of
/// `X = (t - theta^q) Delta tau^2 X + g tau X` through `u^nu`, with every
/// `c_i` checked to lie in `F_q[t, theta]`.
pub fn d2_solve(field: &Arc<Field>, nu: usize) -> Result<USeries> {
    let q = field.q() as usize;
    let m = q - 1;
    if nu < m {
        return Err(Error::InvalidArgument("d2_solve needs Nu >= q - 1".into()));
    }
    let g = modular_g(field, nu)?;
    let delta = modular_delta(field, nu)?;
    let tq = RatFunc::t(field).sub(&RatFunc::from_poly(TTPoly::monomial(field, 0, q, Fe::ONE)));
    let n_top = nu / m;
    let gj = |j: usize| g.coeff(m * j);
    let dj = |j: usize| delta.coeff(m * j);
    let mut c: Vec<RatFunc> = vec![RatFunc::one(field)];
    let mut t1: Vec<RatFunc> = vec![RatFunc::one(field)];
    let mut t2: Vec<RatFunc> = vec![RatFunc::one(field)];
    for n in 1..=n_top {
        let mut s = RatFunc::zero(field);
        for i in 0..=n / q {
            s = s.add(&gj(n - q * i).mul(&t1[i]));
        }
        let mut s2 = RatFunc::zero(field);
        for i in 0..=(n - 1) / (q * q) {
            s2 = s2.add(&dj(n - q * q * i).mul(&t2[i]));
        }
        let cn = s.add(&tq.mul(&s2));
        if !cn.is_poly() {
            return Err(Error::DenominatorNotCleared { index: m * n });
        }
        t1.push(tau_exact(&cn, 1));
        t2.push(tau_exact(&cn, 2));
        c.push(cn);
    }
    let mut coeffs = vec![RatFunc::zero(field); nu + 1];
    for (i, x) in c.into_iter().enumerate() {
        coeffs[m * i] = x;
    }
    Ok(USeries::new(field, coeffs))
}

/// `f_alpha = sum_{c monic, deg c <= Dc} chi_t(c) G_alpha(u_c)` through
/// `u^nu`, for `alpha = 1 mod (q - 1)`.
pub fn chi_u_sum(field: &Arc<Field>, alpha: usize, nu: usize) -> Result<USeries> {
    let m = field.q() as usize - 1;
    if alpha == 0 || alpha % m != 1 % m {
        return Err(Error::InvalidArgument(alloc::format!(
            "alpha = {alpha} is not 1 mod q - 1"
        )));
    }
    let g = goss_poly(field, alpha)?;
    let dc = degree_cutoff(field.q(), nu);
    let sums = power_sums(field, nu, alpha, dc + 1, APoly::chi_t)?;
    USeries::new(field, apply_goss(field, &g, &sums, nu)).tagged(alpha as u64, 1)
}
