//! Randomized precision-soundness runs: every operation is evaluated on
//! inputs truncated to a window and on the same inputs at twice the
//! precision, and the two results must agree wherever both are known.

use std::sync::Arc;

use lchi_core::exact::{RatFunc, TTPoly};
use lchi_core::ffield::{Fe, Field};
use lchi_core::series::{tl_arith, ts_tau, TlOp, TruncLaurent};
use lchi_core::uexp::{useries_tau, USeries};
use lchi_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::verify::Check;

const OPS: [&str; 8] = [
    "tl_add",
    "tl_mul",
    "tl_inv",
    "tl_nth_root",
    "ts_tau",
    "u_mul",
    "u_inv",
    "u_tau",
];

fn random_fe(f: &Field, rng: &mut ChaCha8Rng) -> Fe {
    Fe(rng.gen_range(0..f.order()))
}

fn random_nonzero(f: &Field, rng: &mut ChaCha8Rng) -> Fe {
    Fe(rng.gen_range(1..f.order()))
}

/// A random value known below `theta^{-prec}` with nonzero leading digit.
fn random_laurent(f: &Arc<Field>, rng: &mut ChaCha8Rng, lead: i64, prec: i64) -> TruncLaurent {
    let mut c: Vec<Fe> = (lead..prec).map(|_| random_fe(f, rng)).collect();
    c[0] = random_nonzero(f, rng);
    TruncLaurent::new(f, 1, lead, c, prec)
}

fn random_ttpoly(f: &Arc<Field>, rng: &mut ChaCha8Rng) -> TTPoly {
    let terms: Vec<(usize, usize, Fe)> = (0..rng.gen_range(0..4))
        .map(|_| (rng.gen_range(0..2), rng.gen_range(0..3), random_fe(f, rng)))
        .collect();
    TTPoly::from_terms(f, &terms)
}

fn random_ratfunc(f: &Arc<Field>, rng: &mut ChaCha8Rng) -> RatFunc {
    let num = random_ttpoly(f, rng);
    if rng.gen_bool(0.25) {
        let den = TTPoly::t(f).sub(&TTPoly::theta(f).pow(rng.gen_range(1..4)));
        RatFunc::new(num, den).expect("nonzero denominator")
    } else {
        RatFunc::from_poly(num)
    }
}

fn random_useries(f: &Arc<Field>, rng: &mut ChaCha8Rng, nu: usize, unit: bool) -> USeries {
    let mut c: Vec<RatFunc> = (0..=nu).map(|_| random_ratfunc(f, rng)).collect();
    if unit {
        c[0] = RatFunc::constant(f, random_nonzero(f, rng));
    }
    USeries::new(f, c)
}

/// Low-precision result agrees with the high-precision one and claims no
/// more precision than it.
fn laurent_sound(lo: &TruncLaurent, hi: &TruncLaurent) -> bool {
    lo.agrees_with(hi) && lo.prec() <= hi.prec()
}

fn useries_sound(lo: &USeries, hi: &USeries) -> bool {
    lo.nu() <= hi.nu() && lo.coeffs() == hi.truncate(lo.nu()).coeffs()
}

fn one_op(f: &Arc<Field>, rng: &mut ChaCha8Rng, op: usize) -> Result<bool> {
    let p = rng.gen_range(4..13i64);
    let q = f.q();
    match OPS[op] {
        "tl_add" | "tl_mul" | "tl_inv" => {
            let (lx, ly) = (rng.gen_range(-3..3), rng.gen_range(-3..3));
            let x = random_laurent(f, rng, lx, 2 * p);
            let y = random_laurent(f, rng, ly, 2 * p);
            let o = |cap: i64| match OPS[op] {
                "tl_add" => TlOp::Add,
                "tl_mul" => TlOp::Mul,
                _ => TlOp::Inv(cap),
            };
            let lo = tl_arith(&x.truncate(p), &y.truncate(p), o(p))?;
            let hi = tl_arith(&x, &y, o(2 * p))?;
            Ok(laurent_sound(&lo, &hi))
        }
        "tl_nth_root" => {
            let n = if q.is_multiple_of(2) { 3 } else { 2 };
            let lead = n as i64 * rng.gen_range(-2..2);
            let mut x = random_laurent(f, rng, lead, 2 * p);
            let mut c = x.coeffs().to_vec();
            c[0] = Fe::ONE;
            x = TruncLaurent::new(f, 1, lead, c, 2 * p);
            let lo = tl_arith(&x.truncate(p), &x, TlOp::NthRoot(n, p))?;
            let hi = tl_arith(&x, &x, TlOp::NthRoot(n, 2 * p))?;
            Ok(laurent_sound(&lo, &hi))
        }
        "ts_tau" => {
            let lx = rng.gen_range(-3..3);
            let x = random_laurent(f, rng, lx, 2 * p);
            let k = rng.gen_range(0..3);
            Ok(laurent_sound(&ts_tau(&x.truncate(p), k), &ts_tau(&x, k)))
        }
        _ => {
            let nu = rng.gen_range(2..6usize);
            let unit = OPS[op] == "u_inv";
            let x = random_useries(f, rng, 2 * nu + 1, unit);
            let y = random_useries(f, rng, 2 * nu + 1, false);
            let apply = |a: &USeries, b: &USeries| -> Result<USeries> {
                match OPS[op] {
                    "u_mul" => Ok(a.mul(b)),
                    "u_inv" => a.inv(),
                    _ => Ok(useries_tau(a, 1)),
                }
            };
            let lo = apply(&x.truncate(nu), &y.truncate(nu))?;
            let hi = apply(&x, &y)?;
            Ok(useries_sound(&lo, &hi))
        }
    }
}

/// `n` seeded operations cycling through every kind; the check fails on
/// the first disagreement or error.
pub fn run(f: &Arc<Field>, n: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..n {
        let op = i % OPS.len();
        match one_op(f, &mut rng, op) {
            Ok(true) => {}
            Ok(false) => failures.push(json!({ "op": OPS[op], "index": i })),
            Err(e) => failures.push(json!({ "op": OPS[op], "index": i, "error": e.to_string() })),
        }
    }
    Check {
        identity: format!("{n} randomized operations at doubled precision"),
        q: f.q(),
        passed: failures.is_empty(),
        detail: json!({ "operations": n, "seed": seed, "failures": failures }),
    }
}
