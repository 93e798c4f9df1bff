//! Plain-text rendering for `--format text`.

use std::fmt::Write;

use lchi_core::exact::{RatFunc, TTPoly};
use lchi_core::ffield::{Fe, Field};
use lchi_core::series::{TSeries, TruncLaurent, EXACT};
use lchi_core::uexp::USeries;

/// Prime-field elements print as integers, others as polynomials in `x`.
pub fn fq(f: &Field, a: Fe) -> String {
    let d = f.digits(a);
    if d.len() == 1 {
        return d[0].to_string();
    }
    let terms: Vec<String> = d
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let m = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => m,
                _ => format!("{c}{m}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else if terms.len() == 1 {
        terms[0].clone()
    } else {
        format!("({})", terms.join("+"))
    }
}

fn exponent(num: i64, ram: u32) -> String {
    if ram == 1 {
        num.to_string()
    } else {
        format!("({num}/{ram})")
    }
}

pub fn laurent(x: &TruncLaurent) -> String {
    let f = x.field();
    let mut s = String::new();
    for (i, &c) in x.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !s.is_empty() {
            s.push_str(" + ");
        }
        let e = -(x.lead() + i as i64);
        match e {
            0 => s.push_str(&fq(f, c)),
            _ => write!(s, "{}*θ^{}", fq(f, c), exponent(e, x.ram())).unwrap(),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    if x.prec() < EXACT {
        write!(s, " + O(θ^{})", exponent(-x.prec(), x.ram())).unwrap();
    }
    s
}

pub fn tseries(x: &TSeries) -> String {
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| format!("t^{j}: {}", laurent(c)))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn ttpoly(x: &TTPoly) -> String {
    let f = x.field();
    let terms: Vec<String> = x
        .terms()
        .map(|(i, j, c)| {
            let mut m = Vec::new();
            if c != Fe::ONE || (i == 0 && j == 0) {
                m.push(fq(f, c));
            }
            match i {
                0 => {}
                1 => m.push("t".into()),
                _ => m.push(format!("t^{i}")),
            }
            match j {
                0 => {}
                1 => m.push("θ".into()),
                _ => m.push(format!("θ^{j}")),
            }
            m.join("*")
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn ratfunc(x: &RatFunc) -> String {
    if x.den().is_one() {
        ttpoly(x.num())
    } else {
        format!("({}) / ({})", ttpoly(x.num()), ttpoly(x.den()))
    }
}

pub fn useries(x: &USeries) -> String {
    let mut s = String::new();
    if let (Some(w), Some(m)) = (x.weight(), x.utype()) {
        writeln!(s, "weight {w}, type {m}").unwrap();
    }
    let lines: Vec<String> = x
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("u^{i}: {}", ratfunc(c)))
        .collect();
    s.push_str(&lines.join("\n"));
    write!(s, "\n+ O(u^{})", x.nu() + 1).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders() {
        let f2 = Field::prime_power(2, 1).unwrap();
        let f4 = Field::prime_power(2, 2).unwrap();
        assert_eq!(fq(&f4, Fe(3)), "(x+1)");
        assert_eq!(fq(&f4, Fe(2)), "x");
        let x = TruncLaurent::theta(&f2)
            .add(&TruncLaurent::one(&f2))
            .truncate(2);
        assert_eq!(laurent(&x), "1*θ^1 + 1 + O(θ^-2)");
        let r = RatFunc::one(&f2)
            .div(&RatFunc::t(&f2).add(&RatFunc::theta(&f2)))
            .unwrap();
        assert_eq!(ratfunc(&r), "(1) / (θ + t)");
    }
}
