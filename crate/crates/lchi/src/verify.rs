//! The verification suite: every identity replayed on a certified window,
//! reported as one residual record per check.

use std::sync::Arc;
use std::time::Instant;

use lchi_core::apoly::bracket;
use lchi_core::carlitz::{
    l1_product, l1_product_at, mahler_f, mahler_f_theta_at_theta, pi_qm1, sbar,
};
use lchi_core::exact::{RatFunc, TTPoly};
use lchi_core::ffield::{Fe, Field, FqElem};
use lchi_core::lambda::{lambda_analytic_check, lambda_solve, lambda_tau_check, min_nu};
use lchi_core::lseries::{
    dirichlet_value, euler_product, lchit, zeta, zeta_special_check, LParams,
};
use lchi_core::series::{laurent_of_ratfunc, TSeries, TruncLaurent, EXACT};
use lchi_core::uexp::{
    bc_ratio, chi_u_sum, d2_solve, degree_cutoff, eisenstein, eisenstein_with_cutoff, goss_poly,
    modular_delta, modular_g, modular_h, useries_tau, USeries,
};
use lchi_core::Result;
use serde_json::{json, Value};

use crate::json;
use crate::par::par_map;
use crate::soundness;

/// One identity on one field: whether its residual vanishes on the window
/// and the residual record (or the error that prevented the computation).
#[derive(Clone, Debug)]
pub struct Check {
    pub identity: String,
    pub q: u32,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({ "identity": self.identity, "q": self.q, "passed": self.passed, "residual": self.detail })
    }

    fn error(identity: &str, q: u32, e: lchi_core::Error) -> Check {
        Check {
            identity: identity.into(),
            q,
            passed: false,
            detail: json!({ "error": e.to_string() }),
        }
    }

    fn from<T>(identity: &str, q: u32, r: Result<T>, f: impl FnOnce(T) -> (bool, Value)) -> Check {
        match r {
            Ok(x) => {
                let (passed, detail) = f(x);
                Check {
                    identity: identity.into(),
                    q,
                    passed,
                    detail,
                }
            }
            Err(e) => Check::error(identity, q, e),
        }
    }

    /// Residual zero to precision, with precision at least `need`.
    pub fn laurent(identity: &str, q: u32, r: Result<TruncLaurent>, need: i64) -> Check {
        Check::from(identity, q, r, |x| {
            (x.is_zero() && x.prec() >= need, json::residual_laurent(&x))
        })
    }

    pub fn series(identity: &str, q: u32, r: Result<TSeries>, need: i64) -> Check {
        Check::from(identity, q, r, |x| {
            (x.is_zero() && x.prec() >= need, json::residual_tseries(&x))
        })
    }

    pub fn useries(identity: &str, q: u32, r: Result<USeries>) -> Check {
        Check::from(identity, q, r, |x| {
            (x.is_zero(), json::residual_useries(&x))
        })
    }

    pub fn exact(identity: &str, q: u32, r: Result<RatFunc>) -> Check {
        Check::from(identity, q, r, |x| {
            (x.is_zero(), json::residual_ratfunc(&x))
        })
    }

    pub fn holds(identity: &str, q: u32, r: Result<bool>) -> Check {
        Check::from(identity, q, r, |b| (b, json!({ "holds": b })))
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub number: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed(),
            "seconds": self.seconds,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn summary_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} criterion {}: {} ({} checks, {:.2}s)",
            self.number,
            self.title,
            self.checks.len(),
            self.seconds
        );
        if let Some(c) = self.first_failure() {
            s.push_str(&format!(
                " first failure: {} q={} {}",
                c.identity, c.q, c.detail
            ));
        }
        s
    }
}

/// Parameters of every criterion.
#[derive(Clone, Debug)]
pub struct Suite {
    /// `(p, e)` of the constant fields `F_q`.
    pub fields: Vec<(u32, u32)>,
    pub nt: usize,
    pub prec: i64,
    /// Degree cutoff of the direct sum and Euler product.
    pub d: usize,
    pub zeta_prec: i64,
    pub dirichlet_prec: i64,
    pub dirichlet_max_r: u32,
    pub lambda_nt: usize,
    pub lambda_prec: i64,
    /// `Nu` for the `u`-expansion invariants; `None` means `2 q^2`.
    pub nu: Option<usize>,
    pub random_ops: usize,
    pub seed: u64,
}

pub const TITLES: [&str; 9] = [
    "master identity L(chi_t,1)(t-theta)sbar = -1",
    "product, direct sum and Euler product agree",
    "zeta at q^k-1 against powers of the period",
    "Dirichlet values at Frobenius-fixed xi",
    "lambda_alpha pipeline",
    "d_2 and the vectorial identity",
    "u-expansion engine invariants",
    "Mahler function identities",
    "precision soundness under doubled precision",
];

impl Suite {
    /// The full acceptance parameters.
    pub fn acceptance() -> Suite {
        Suite {
            fields: vec![(2, 1), (3, 1)],
            nt: 6,
            prec: 24,
            d: 24,
            zeta_prec: 30,
            dirichlet_prec: 20,
            dirichlet_max_r: 3,
            lambda_nt: 4,
            lambda_prec: 20,
            nu: None,
            random_ops: 200,
            seed: 0x5eed,
        }
    }

    pub fn run(&self, n: u32) -> CriterionReport {
        let start = Instant::now();
        let mut checks = Vec::new();
        for &(p, e) in &self.fields {
            let f = match Field::prime_power(p, e) {
                Ok(f) => f,
                Err(err) => {
                    checks.push(Check::error("field construction", p.pow(e), err));
                    continue;
                }
            };
            let q = f.q();
            match n {
                1 => checks.push(self.master(&f)),
                2 => checks.extend(self.product_sum_euler(&f)),
                3 => checks.extend(self.zeta_specials(&f)),
                4 => checks.extend(self.dirichlet(&f)),
                5 => checks.extend(self.lambda(&f)),
                6 => checks.extend(self.d2(&f)),
                7 => checks.extend(self.uexp(&f)),
                8 => checks.extend(self.mahler(&f)),
                9 => checks.push(soundness::run(
                    &f,
                    self.random_ops / self.fields.len().max(1),
                    self.seed ^ q as u64,
                )),
                _ => {}
            }
        }
        CriterionReport {
            number: n,
            title: TITLES[(n - 1) as usize],
            checks,
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    /// Runs criteria 1 to 9, `jobs` at a time, reporting in order.
    pub fn run_all(&self, jobs: usize) -> Vec<CriterionReport> {
        par_map(jobs, (1..=9).collect(), |n| self.run(n))
    }

    fn params(&self, alpha: u32) -> Result<LParams> {
        Ok(LParams::new(alpha, self.nt, self.prec)?.with_cutoff(self.d))
    }

    fn master(&self, f: &Arc<Field>) -> Check {
        let r = (|| {
            let p = self.params(1)?;
            let l = lchit(f, &p)?;
            let x = sbar(f, self.nt, self.prec + 1).mul_t_minus(&TruncLaurent::theta(f));
            Ok(l.mul(&x)
                .add(&TSeries::constant(TruncLaurent::one(f), self.nt)))
        })();
        let need = self.params(1).map_or(self.prec, |p| p.window());
        Check::series("L(chi_t,1)(t-theta)sbar + 1", f.q(), r, need)
    }

    fn product_sum_euler(&self, f: &Arc<Field>) -> Vec<Check> {
        let q = f.q();
        let mut out = Vec::new();
        let p = match self.params(1) {
            Ok(p) => p,
            Err(e) => return vec![Check::error("parameters", q, e)],
        };
        let w = p.window();
        let prod = l1_product(f, self.nt, self.prec);
        let sum = lchit(f, &p);
        let euler = euler_product(f, &p);
        let diff = |a: &TSeries, b: &Result<TSeries>| b.clone().map(|b| a.truncate_prec(w).sub(&b));
        out.push(Check::series(
            "L1_product - Lchit(1)",
            q,
            diff(&prod, &sum),
            w,
        ));
        out.push(Check::series(
            "L1_product - euler_product(1)",
            q,
            diff(&prod, &euler),
            w,
        ));
        let se = match (&sum, &euler) {
            (Ok(s), e) => diff(s, e),
            (Err(e), _) => Err(e.clone()),
        };
        out.push(Check::series("Lchit(1) - euler_product(1)", q, se, w));
        let theta = TruncLaurent::theta(f);
        let one = TruncLaurent::one(f);
        out.push(Check::laurent(
            "L1_product(t=theta) - 1",
            q,
            Ok(l1_product_at(&theta, self.prec).sub(&one)),
            self.prec,
        ));
        let tq = TruncLaurent::monomial(f, Fe::ONE, q as i64);
        out.push(Check::laurent(
            "L1_product(t=theta^q)",
            q,
            Ok(l1_product_at(&tq, self.prec)),
            self.prec,
        ));
        out
    }

    fn zeta_specials(&self, f: &Arc<Field>) -> Vec<Check> {
        let q = f.q();
        let kmax = match q {
            2 => 3,
            3 => 2,
            _ => 1,
        };
        (1..=kmax)
            .map(|k| {
                Check::laurent(
                    &format!("zeta(q^{k}-1)[{k}]..[1] -+ (pi^(q-1))^((q^{k}-1)/(q-1))"),
                    q,
                    zeta_special_check(f, k, self.zeta_prec),
                    self.zeta_prec,
                )
            })
            .collect()
    }

    fn dirichlet(&self, f: &Arc<Field>) -> Vec<Check> {
        let q = f.q();
        let mut out = Vec::new();
        if q != 2 {
            return out;
        }
        let prec = self.dirichlet_prec;
        for r in 1..=self.dirichlet_max_r {
            let fr = match f.extension(r) {
                Ok((fr, _)) => fr,
                Err(e) => {
                    out.push(Check::error("extension field", q, e));
                    continue;
                }
            };
            for x in fr.elements().filter(|&x| fr.frob_k(x, r) == x) {
                let tag = format!("r={r} xi={:?}", fr.digits(x));
                let v = dirichlet_value(&FqElem::new(&fr, x), r, prec);
                out.push(Check::laurent(
                    &format!("rho_check {tag}"),
                    q,
                    v.clone().map(|v| v.rho_check),
                    prec,
                ));
                let pc = v.and_then(|v| {
                    v.period_check
                        .ok_or(lchi_core::Error::InvalidArgument("no period check".into()))
                });
                out.push(Check::laurent(&format!("period_check {tag}"), q, pc, prec));
            }
        }
        out
    }

    fn lambda(&self, f: &Arc<Field>) -> Vec<Check> {
        let q = f.q();
        let mut out = Vec::new();
        let t = RatFunc::t(f);
        let twist = |k: u32| t.sub(&RatFunc::theta(f).pow((q as u64).pow(k)));
        let closed = [
            Ok(RatFunc::one(f).neg()),
            twist(1).inv().map(|x| x.neg()),
            twist(2).mul(&twist(1)).inv().map(|x| x.neg()),
        ];
        for (k, want) in closed.into_iter().enumerate() {
            let alpha = (q as usize).pow(k as u32);
            let nu = min_nu(q, alpha).max(self.nu.unwrap_or(0));
            let res = lambda_solve(f, alpha, nu);
            let name = format!("lambda_{alpha} - closed form");
            let r = match (&res, want) {
                (Ok(r), Ok(w)) => Ok(r.lambda.sub(&w)),
                (Err(e), _) => Err(e.clone()),
                (_, Err(e)) => Err(e),
            };
            out.push(Check::exact(&name, q, r));
            out.push(Check::holds(
                &format!("lambda_{alpha} overdetermination certificate"),
                q,
                res.map(|r| {
                    let (a, b) = r.basis_sizes();
                    r.residual_order == nu + 1 && nu + 1 > a + b
                }),
            ));
        }
        for (alpha, k) in [(1usize, 1u32), (1, 2), (q as usize, 1)] {
            out.push(Check::exact(
                &format!("tau^{k} lambda_{alpha} relation"),
                q,
                lambda_tau_check(f, alpha, k),
            ));
        }
        for alpha in [1usize, q as usize, 2 * q as usize - 1] {
            out.push(Check::series(
                &format!("L(chi_t,{alpha}) against lambda_{alpha}"),
                q,
                lambda_analytic_check(f, alpha, self.lambda_nt, self.lambda_prec),
                self.lambda_prec,
            ));
        }
        out
    }

    fn d2(&self, f: &Arc<Field>) -> Vec<Check> {
        let q = f.q();
        let nu = (q as usize).pow(3);
        let x = d2_solve(f, nu);
        let mut out = vec![Check::holds(
            "d_2 coefficients in F_q[t,theta]",
            q,
            x.as_ref().map(|x| x.is_poly()).map_err(Clone::clone),
        )];
        let resid = x.clone().and_then(|x| {
            let g = modular_g(f, nu)?;
            let delta = modular_delta(f, nu)?;
            let tq = TTPoly::t(f).sub(&TTPoly::theta(f).pow(q as u64));
            let rhs = delta
                .mul(&useries_tau(&x, 2))
                .scale(&RatFunc::from_poly(tq))
                .add(&g.mul(&useries_tau(&x, 1)));
            Ok(x.sub(&rhs))
        });
        out.push(Check::useries(
            "X - (t-theta^q) Delta tau^2 X - g tau X",
            q,
            resid,
        ));
        let vect = x.and_then(|x| {
            let h = modular_h(f, nu)?;
            let f1 = chi_u_sum(f, 1, nu)?;
            Ok(useries_tau(&x, 1).truncate(nu).mul(&h).add(&f1))
        });
        out.push(Check::useries("tau(d_2) h + sum chi_t(a) u_a", q, vect));
        out
    }

    fn uexp(&self, f: &Arc<Field>) -> Vec<Check> {
        let q = f.q();
        let qu = q as usize;
        let nu = self.nu.unwrap_or(2 * qu * qu);
        let mut out = Vec::new();
        let u_pow = |k: usize| {
            let mut v = vec![RatFunc::zero(f); k + 1];
            v[k] = RatFunc::one(f);
            v
        };
        out.push(Check::holds(
            "G_1 = u",
            q,
            goss_poly(f, 1).map(|g| g == u_pow(1)),
        ));
        out.push(Check::holds(
            "G_k = u^k for k <= q",
            q,
            (1..=qu).try_fold(true, |ok, k| Ok(ok && goss_poly(f, k)? == u_pow(k))),
        ));
        let p = f.characteristic() as usize;
        out.push(Check::holds(
            "G_{pk} = G_k^p",
            q,
            (1..=qu * qu / p).try_fold(true, |ok, k| {
                let gk = USeries::new(f, goss_poly(f, k)?);
                let mut c = gk.coeffs().to_vec();
                c.resize(p * k + 1, RatFunc::zero(f));
                let pw = USeries::new(f, c).pow(p as u64);
                Ok(ok && pw.coeffs() == &goss_poly(f, p * k)?[..])
            }),
        ));
        out.push(Check::holds(
            "G_k supported on u^i with i = k mod q-1",
            q,
            (1..=qu * qu).try_fold(true, |ok, k| {
                let g = goss_poly(f, k)?;
                Ok(ok
                    && g.iter().enumerate().all(|(i, c)| {
                        c.is_zero() || (i + qu - 1 - k % (qu - 1)).is_multiple_of(qu - 1)
                    }))
            }),
        ));
        let dc = degree_cutoff(q, nu);
        for w in [qu - 1, 2 * (qu - 1), qu * qu - 1] {
            let e = eisenstein(f, w, nu);
            out.push(Check::holds(
                &format!("E_{w} constant term 1"),
                q,
                e.as_ref()
                    .map(|e| e.coeff(0).is_one())
                    .map_err(Clone::clone),
            ));
            let stab = e.and_then(|e| Ok(e.sub(&eisenstein_with_cutoff(f, w, nu, dc + 1)?)));
            out.push(Check::useries(
                &format!("E_{w} stable in the degree cutoff"),
                q,
                stab,
            ));
        }
        let h = modular_h(f, nu);
        let hd = h
            .clone()
            .and_then(|h| Ok(h.pow(qu as u64 - 1).add(&modular_delta(f, nu)?)));
        out.push(Check::useries("h^(q-1) + Delta", q, hd));
        out.push(Check::holds(
            "h = -u + O(u^2)",
            q,
            h.map(|h| h.coeff(0).is_zero() && h.coeff(1).neg().is_one()),
        ));
        let bc1 = (|| {
            let b1 = RatFunc::from_poly(TTPoly::from_theta_poly(f, bracket(f, 1)?.coeffs()));
            Ok(bc_ratio(f, qu - 1)?.add(&b1.inv()?))
        })();
        out.push(Check::exact("bc_ratio(q-1) + 1/[1]", q, bc1));
        let prec = 16i64;
        for w in [qu - 1, 2 * (qu - 1), qu * qu - 1] {
            let r = (|| {
                let n = (w / (qu - 1)) as i64;
                let qi = q as i64;
                let pi = pi_qm1(f, prec + qi * n - qi).pow(n as u64);
                let bc = laurent_of_ratfunc(&bc_ratio(f, w)?, prec + qi * n)?;
                Ok(bc.mul(&pi).sub(&zeta(f, w as u32, prec)?))
            })();
            out.push(Check::laurent(
                &format!("bc_ratio({w}) pi^{w} - zeta({w})"),
                q,
                r,
                prec,
            ));
        }
        out
    }

    fn mahler(&self, f: &Arc<Field>) -> Vec<Check> {
        let q = f.q();
        let (nt, prec) = (self.nt, self.prec);
        let f0 = mahler_f(f, 0, nt, prec);
        let f1 = mahler_f(f, 1, nt, prec);
        let mut c = vec![
            TruncLaurent::one(f),
            TruncLaurent::monomial(f, f.neg(Fe::ONE), -(q as i64)),
        ];
        c.resize(nt + 1, TruncLaurent::zero(f, 1, EXACT));
        let fe = f0.sub(&f1.mul(&TSeries::new(c)));
        let ratio = (|| {
            let ft = mahler_f_theta_at_theta(f, prec + 1);
            Ok(f0.scale(&ft.inv(prec + 1)?).sub(&l1_product(f, nt, prec)))
        })();
        vec![
            Check::series("f_t(theta) - (1 - t/theta^q) f_t(theta^q)", q, Ok(fe), prec),
            Check::series("f_t(theta)/f_theta(theta) - L1_product", q, ratio, prec),
        ]
    }
}
