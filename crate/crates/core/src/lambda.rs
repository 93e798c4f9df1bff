//! The rational functions `lambda_alpha` with
//! `L(chi_t, alpha) (t - theta) sbar = lambda_alpha (pi^{q-1})^{(alpha-1)/(q-1)}`,
//! obtained by writing `f_alpha = phi d_2 + psi tau(d_2)` with `phi` of weight
//! `alpha + 1` and `psi` of weight `alpha + q` (both type 1) in the monomial
//! bases `g^a h^b`, and reading `lambda_alpha = -[u^1] psi`.
//!
//! The linear system is matched on every `u`-power through `Nu`, which is
//! more equations than unknowns; its consistency certifies the solution.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::carlitz::{pi_qm1, sbar};
use crate::exact::{solve_linear, tau_exact, RatFunc, TTPoly};
use crate::ffield::{Fe, Field};
use crate::lseries::{lchit, LParams};
use crate::series::{tseries_of_ratfunc, TSeries, TruncLaurent};
use crate::uexp::{chi_u_sum, d2_solve, eisenstein, modular_g, modular_h, useries_tau, USeries};
use crate::{Error, Result};

/// Exponents `(a, b)` with `a (q - 1) + b (q + 1) = w` and `b = m mod (q - 1)`,
/// by increasing `b`: the monomials `g^a h^b` spanning weight `w`, type `m`.
pub fn mform_basis(q: u32, w: usize, m: u32) -> Vec<(usize, usize)> {
    let (qm, qp) = (q as usize - 1, q as usize + 1);
    (0..=w / qp)
        .filter(|&b| b % qm == m as usize % qm && (w - b * qp).is_multiple_of(qm))
        .map(|b| ((w - b * qp) / qm, b))
        .collect()
}

/// Smallest `Nu` accepted by [`lambda_solve`]: `q (alpha + q) + q^2`.
pub fn min_nu(q: u32, alpha: usize) -> usize {
    let q = q as usize;
    q * (alpha + q) + q * q
}

/// Outcome of [`lambda_solve`].
#[derive(Clone, Debug)]
pub struct LambdaResult {
    pub alpha: usize,
    pub lambda: RatFunc,
    pub phi: USeries,
    pub psi: USeries,
    /// First `u`-power at which the identity was not checked.
    pub residual_order: usize,
    pub phi_basis: Vec<(usize, usize)>,
    pub psi_basis: Vec<(usize, usize)>,
}

impl LambdaResult {
    pub fn basis_sizes(&self) -> (usize, usize) {
        (self.phi_basis.len(), self.psi_basis.len())
    }
}

fn check_alpha(q: u32, alpha: usize) -> Result<()> {
    let m = q as usize - 1;
    if alpha == 0 || alpha % m != 1 % m {
        return Err(Error::InvalidArgument(alloc::format!(
            "alpha = {alpha} is not 1 mod q - 1"
        )));
    }
    Ok(())
}

/// `g^a h^b` through `u^nu` for every pair in `basis`.
fn monomials(g: &USeries, h: &USeries, basis: &[(usize, usize)]) -> Vec<USeries> {
    basis
        .iter()
        .map(|&(a, b)| g.pow(a as u64).mul(&h.pow(b as u64)))
        .collect()
}

/// Solves `f_alpha = phi d_2 + psi tau(d_2)` through `u^nu`.
pub fn lambda_solve(field: &Arc<Field>, alpha: usize, nu: usize) -> Result<LambdaResult> {
    let q = field.q();
    check_alpha(q, alpha)?;
    if nu < min_nu(q, alpha) {
        return Err(Error::InvalidArgument(alloc::format!(
            "Nu = {nu} is below q (alpha + q) + q^2 = {}",
            min_nu(q, alpha)
        )));
    }
    let g = modular_g(field, nu)?;
    let h = modular_h(field, nu)?;
    let d2 = d2_solve(field, nu)?;
    let td2 = useries_tau(&d2, 1).truncate(nu);
    let f = chi_u_sum(field, alpha, nu)?;
    let phi_basis = mform_basis(q, alpha + 1, 1);
    let psi_basis = mform_basis(q, alpha + q as usize, 1);
    let phi_mono = monomials(&g, &h, &phi_basis);
    let psi_mono = monomials(&g, &h, &psi_basis);
    let cols: Vec<USeries> = phi_mono
        .iter()
        .map(|m| m.mul(&d2))
        .chain(psi_mono.iter().map(|m| m.mul(&td2)))
        .collect();
    let rows: Vec<Vec<RatFunc>> = (0..=nu)
        .map(|i| cols.iter().map(|c| c.coeff(i).clone()).collect())
        .collect();
    let x = solve_linear(&rows, f.coeffs())?;
    let combine = |mono: &[USeries], xs: &[RatFunc]| {
        mono.iter()
            .zip(xs)
            .fold(USeries::zero(field, nu), |acc, (m, c)| acc.add(&m.scale(c)))
    };
    let nphi = phi_basis.len();
    let phi = combine(&phi_mono, &x[..nphi]).tagged(alpha as u64 + 1, 1)?;
    let psi = combine(&psi_mono, &x[nphi..]).tagged((alpha + q as usize) as u64, 1)?;
    let lambda = psi.coeff(1).neg();
    Ok(LambdaResult {
        alpha,
        lambda,
        phi,
        psi,
        residual_order: nu + 1,
        phi_basis,
        psi_basis,
    })
}

/// `(t - theta^{q^k}) ... (t - theta^q)`.
fn twisted_factors(field: &Arc<Field>, k: u32) -> RatFunc {
    let q = field.q() as usize;
    (1..=k).fold(RatFunc::one(field), |acc, i| {
        let f = TTPoly::t(field).sub(&TTPoly::monomial(field, 0, q.pow(i), Fe::ONE));
        acc.mul_poly(&f)
    })
}

/// `tau^k(lambda_alpha) - (t - theta^{q^k}) ... (t - theta^q) lambda_{q^k alpha}`.
pub fn lambda_tau_residual(lambda_alpha: &RatFunc, lambda_qk_alpha: &RatFunc, k: u32) -> RatFunc {
    let field = lambda_alpha.field();
    tau_exact(lambda_alpha, k).sub(&twisted_factors(field, k).mul(lambda_qk_alpha))
}

/// [`lambda_tau_residual`] with both values from [`lambda_solve`] at their
/// smallest `Nu`.
pub fn lambda_tau_check(field: &Arc<Field>, alpha: usize, k: u32) -> Result<RatFunc> {
    let q = field.q() as usize;
    let big = q.pow(k) * alpha;
    let a = lambda_solve(field, alpha, min_nu(field.q(), alpha))?;
    let b = lambda_solve(field, big, min_nu(field.q(), big))?;
    Ok(lambda_tau_residual(&a.lambda, &b.lambda, k))
}

/// `L(chi_t, alpha) (t - theta) sbar - lambda (pi^{q-1})^{(alpha-1)/(q-1)}`
/// through `t^nt`, known below `theta^{-prec}`.
pub fn lambda_analytic_residual(
    field: &Arc<Field>,
    lambda: &RatFunc,
    alpha: usize,
    nt: usize,
    prec: i64,
) -> Result<TSeries> {
    let q = field.q() as i64;
    check_alpha(q as u32, alpha)?;
    let n = (alpha as i64 - 1) / (q - 1);
    let l = lchit(field, &LParams::new(alpha as u32, nt, prec)?)?;
    let x = sbar(field, nt, prec + 1).mul_t_minus(&TruncLaurent::theta(field));
    let lhs = l.mul(&x);
    let pi = pi_qm1(field, prec + q * n - q).pow(n as u64);
    let lam = tseries_of_ratfunc(lambda, nt, prec + q * n)?;
    Ok(lhs.sub(&lam.scale(&pi)).truncate_prec(prec))
}

/// [`lambda_analytic_residual`] with `lambda_alpha` from [`lambda_solve`].
pub fn lambda_analytic_check(
    field: &Arc<Field>,
    alpha: usize,
    nt: usize,
    prec: i64,
) -> Result<TSeries> {
    let lam = lambda_solve(field, alpha, min_nu(field.q(), alpha))?;
    lambda_analytic_residual(field, &lam.lambda, alpha, nt, prec)
}

/// `psi - lambda_alpha h E_{alpha-1}` (with `E_0 = 1`) through the solve
/// order, for `alpha - 1 <= q (q - 1)`, where weight `alpha - 1`, type 0 is
/// spanned by `E_{alpha-1}` alone.
pub fn eisenstein_check(field: &Arc<Field>, res: &LambdaResult) -> Result<USeries> {
    let q = field.q() as usize;
    let alpha = res.alpha;
    if alpha == 0 || alpha - 1 > q * (q - 1) {
        return Err(Error::InvalidArgument(alloc::format!(
            "alpha = {alpha} is outside 1 ..= q (q - 1) + 1"
        )));
    }
    let nu = res.psi.nu();
    let h = modular_h(field, nu)?;
    let e = if alpha == 1 {
        USeries::one(field, nu)
    } else {
        eisenstein(field, alpha - 1, nu)?
    };
    Ok(res.psi.sub(&h.mul(&e).scale(&res.lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn fq(q: u32) -> Arc<Field> {
        Field::prime_power(q, 1).unwrap()
    }

    /// `-1 / ((t - theta^{q^k}) ... (t - theta^q))`.
    fn closed_form(f: &Arc<Field>, k: u32) -> RatFunc {
        twisted_factors(f, k).inv().unwrap().neg()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(mform_basis(2, 3, 1), [(3, 0), (0, 1)]);
        for q in [3u32, 4] {
            assert_eq!(mform_basis(q, q as usize + 1, 1), [(0, 1)]);
            assert_eq!(mform_basis(q, q as usize - 1, 0), [(1, 0)]);
        }
        assert!(mform_basis(3, 2, 1).is_empty());
        assert_eq!(mform_basis(3, 12, 1), [(4, 1), (0, 3)]);
        assert_eq!(mform_basis(2, 0, 0), [(0, 0)]);
    }

    #[test]
    fn lambda_closed_forms() {
        for (q, ks) in [(2u32, 0..=2u32), (3, 0..=1)] {
            let f = fq(q);
            for k in ks {
                let alpha = (q as usize).pow(k);
                let r = lambda_solve(&f, alpha, min_nu(q, alpha)).unwrap();
                assert_eq!(r.lambda, closed_form(&f, k), "q={q} alpha={alpha}");
                assert_eq!(r.psi.coeff(1).neg(), r.lambda);
                assert_eq!(r.residual_order, min_nu(q, alpha) + 1);
            }
        }
    }

    #[test]
    fn lambda_one_has_phi_zero_and_psi_minus_h() {
        for q in [2u32, 3] {
            let f = fq(q);
            let r = lambda_solve(&f, 1, min_nu(q, 1)).unwrap();
            assert!(r.phi.is_zero());
            let sizes = if q == 2 { (1, 2) } else { (0, 1) };
            assert_eq!(r.basis_sizes(), sizes);
            let h = modular_h(&f, r.psi.nu()).unwrap();
            assert_eq!(r.psi.coeffs(), h.neg().coeffs());
        }
    }

    #[test]
    fn lambda_is_stable_in_nu() {
        for (q, alpha) in [(2u32, 3usize), (3, 3)] {
            let f = fq(q);
            let n = min_nu(q, alpha);
            let a = lambda_solve(&f, alpha, n).unwrap();
            let b = lambda_solve(&f, alpha, n + q as usize).unwrap();
            assert_eq!(a.lambda, b.lambda);
        }
        assert!(lambda_solve(&fq(2), 1, 3).is_err());
        assert!(lambda_solve(&fq(3), 2, 40).is_err());
    }

    #[test]
    fn tau_relation() {
        for q in [2u32, 3] {
            let f = fq(q);
            assert!(lambda_tau_check(&f, 1, 1).unwrap().is_zero());
        }
        assert!(lambda_tau_check(&fq(2), 1, 2).unwrap().is_zero());
        assert!(lambda_tau_check(&fq(2), 2, 1).unwrap().is_zero());
    }

    #[test]
    fn analytic_identity_small_window() {
        for (q, alphas) in [(2u32, vec![1usize, 2, 3]), (3, vec![1, 3, 5])] {
            let f = fq(q);
            for alpha in alphas {
                let r = lambda_analytic_check(&f, alpha, 3, 14).unwrap();
                assert!(r.prec() >= 14);
                assert!(r.is_zero(), "q={q} alpha={alpha}");
            }
        }
    }

    #[test]
    fn psi_is_lambda_h_eisenstein() {
        for (q, alphas) in [(2u32, vec![1usize, 2, 3]), (3, vec![1, 3, 5, 7])] {
            let f = fq(q);
            for alpha in alphas {
                let r = lambda_solve(&f, alpha, min_nu(q, alpha)).unwrap();
                assert!(
                    eisenstein_check(&f, &r).unwrap().is_zero(),
                    "q={q} alpha={alpha}"
                );
            }
        }
        let r = lambda_solve(&fq(2), 5, min_nu(2, 5)).unwrap();
        assert!(eisenstein_check(&fq(2), &r).is_err());
    }

    #[test]
    fn inconsistent_targets_are_reported() {
        let f = fq(2);
        let g = modular_g(&f, 4).unwrap();
        let rows: Vec<Vec<RatFunc>> = (0..=4).map(|i| vec![g.coeff(i).clone()]).collect();
        let mut b: Vec<RatFunc> = g.coeffs().to_vec();
        b[3] = b[3].add(&RatFunc::one(&f));
        assert_eq!(
            solve_linear(&rows, &b).unwrap_err(),
            Error::Inconsistent { row: 3 }
        );
    }
}
