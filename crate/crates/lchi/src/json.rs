//! JSON encodings of the core types.
//!
//! Truncated series name their field by a JSON pointer (`"#/field"`) into
//! the enclosing document instead of repeating the modulus. A precision of
//! `null` marks an exact value.

use lchi_core::exact::{RatFunc, TTPoly};
use lchi_core::ffield::{Fe, Field, FieldSpec};
use lchi_core::lambda::LambdaResult;
use lchi_core::series::{TSeries, TruncLaurent, EXACT};
use lchi_core::uexp::USeries;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

/// Pointer used by series serialized inside a document whose `"field"`
/// member describes their coefficient field.
pub const FIELD_REF: &str = "#/field";

pub fn field_spec(s: &FieldSpec) -> Value {
    json!({ "p": s.p, "e": s.e, "modulus": s.modulus })
}

/// The field together with `q`, the size of the constant field of `A`.
pub fn field(f: &Field) -> Value {
    let mut v = field_spec(f.spec());
    v["q"] = json!(f.q());
    v
}

pub fn fq(f: &Field, a: Fe) -> Value {
    json!({ "coeffs": f.digits(a) })
}

fn prec(p: i64) -> Value {
    if p >= EXACT {
        Value::Null
    } else {
        json!(p)
    }
}

pub fn laurent(x: &TruncLaurent, field_ref: &str) -> Value {
    let f = x.field();
    json!({
        "field": field_ref,
        "ram": x.ram(),
        "lead": x.lead(),
        "prec": prec(x.prec()),
        "coeffs": x.coeffs().iter().map(|&c| fq(f, c)).collect::<Vec<_>>(),
    })
}

pub fn tseries(x: &TSeries, field_ref: &str) -> Value {
    json!({
        "Nt": x.nt(),
        "growth": x.growth(),
        "coeffs": x.coeffs().iter().map(|c| laurent(c, field_ref)).collect::<Vec<_>>(),
    })
}

pub fn ttpoly(x: &TTPoly) -> Value {
    let f = x.field();
    let terms: Vec<Value> = x
        .terms()
        .map(|(i, j, c)| json!({ "t": i, "theta": j, "c": fq(f, c) }))
        .collect();
    json!({ "terms": terms })
}

pub fn ratfunc(x: &RatFunc) -> Value {
    json!({ "num": ttpoly(x.num()), "den": ttpoly(x.den()) })
}

pub fn useries(x: &USeries) -> Value {
    json!({
        "Nu": x.nu(),
        "weight": x.weight(),
        "type": x.utype(),
        "coeffs": x.coeffs().iter().map(ratfunc).collect::<Vec<_>>(),
    })
}

pub fn lambda_result(r: &LambdaResult) -> Value {
    let basis = |b: &[(usize, usize)]| -> Vec<Value> {
        b.iter().map(|&(a, c)| json!({ "g": a, "h": c })).collect()
    };
    json!({
        "alpha": r.alpha,
        "lambda": ratfunc(&r.lambda),
        "phi": useries(&r.phi),
        "psi": useries(&r.psi),
        "residual_order": r.residual_order,
        "basis": { "phi": basis(&r.phi_basis), "psi": basis(&r.psi_basis) },
    })
}

pub fn window(nt: Option<usize>, theta_prec: i64) -> Value {
    json!({ "window": { "Nt": nt, "theta_prec": prec(theta_prec) } })
}

/// Largest `theta`-exponent (numerator over `ram`) carrying a nonzero
/// digit, or `None` when zero to precision.
pub fn max_nonzero_exponent(x: &TruncLaurent) -> Option<i64> {
    x.leading_exponent().map(|(e, _)| e)
}

pub fn residual_laurent(x: &TruncLaurent) -> Value {
    json!({
        "max_nonzero_exponent": max_nonzero_exponent(x),
        "ram": x.ram(),
        "prec": prec(x.prec()),
    })
}

/// The first `t`-power with a nonzero digit and that digit's exponent.
pub fn residual_tseries(x: &TSeries) -> Value {
    let bad = x
        .coeffs()
        .iter()
        .enumerate()
        .find_map(|(j, c)| max_nonzero_exponent(c).map(|e| (j, e)));
    json!({
        "max_nonzero_exponent": bad.map(|b| b.1),
        "t_power": bad.map(|b| b.0),
        "prec": prec(x.prec()),
    })
}

/// Exact residuals report the `theta`-degree of the first nonzero
/// coefficient in the numerator.
pub fn residual_ratfunc(x: &RatFunc) -> Value {
    let bad = x.num().terms().next();
    json!({
        "max_nonzero_exponent": bad.map(|(_, j, _)| j),
        "t_power": bad.map(|(i, _, _)| i),
    })
}

pub fn residual_useries(x: &USeries) -> Value {
    let bad = x.order();
    json!({
        "max_nonzero_exponent": bad.map(|i| x.coeff(i).num().theta_degree()),
        "u_power": bad,
        "Nu": x.nu(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_and_elements() {
        let f = Field::prime_power(2, 2).unwrap();
        assert_eq!(
            field_spec(f.spec()),
            json!({ "p": 2, "e": 2, "modulus": [1, 1, 1] })
        );
        assert_eq!(fq(&f, Fe(2)), json!({ "coeffs": [0, 1] }));
    }

    #[test]
    fn laurent_shape() {
        let f = Field::prime_power(3, 1).unwrap();
        let x = TruncLaurent::theta(&f).truncate(4);
        let v = laurent(&x, FIELD_REF);
        assert_eq!(v["lead"], json!(-1));
        assert_eq!(v["prec"], json!(4));
        assert_eq!(v["coeffs"][0], json!({ "coeffs": [1] }));
        assert_eq!(
            laurent(&TruncLaurent::one(&f), FIELD_REF)["prec"],
            Value::Null
        );
        assert_eq!(residual_laurent(&x)["max_nonzero_exponent"], json!(1));
    }

    #[test]
    fn ratfunc_terms_are_sorted() {
        let f = Field::prime_power(2, 1).unwrap();
        let p = TTPoly::t(&f).add(&TTPoly::theta(&f)).add(&TTPoly::one(&f));
        let v = ttpoly(&p);
        let pos: Vec<(u64, u64)> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| (t["t"].as_u64().unwrap(), t["theta"].as_u64().unwrap()))
            .collect();
        assert_eq!(pos, [(0, 0), (0, 1), (1, 0)]);
        let r = ratfunc(&RatFunc::one(&f).neg());
        assert_eq!(r["den"]["terms"][0]["c"], json!({ "coeffs": [1] }));
    }
}
