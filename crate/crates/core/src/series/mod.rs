//! Certified truncated series: Laurent series in `theta^{-1/m}`
//! ([`TruncLaurent`]), the formal root extension ([`RootExt`]) and power
//! series in `t` over them ([`TSeries`]).
//!
//! Every value carries the first exponent it does not know; arithmetic
//! propagates that bound pessimistically and never reports digits beyond it.

mod laurent;
mod rootext;
mod tseries;

pub use laurent::{tl_arith, TlOp, TruncLaurent, EXACT};
pub use rootext::RootExt;
pub use tseries::TSeries;

/// `tau^k` on a Laurent value.
pub fn ts_tau(x: &TruncLaurent, k: u32) -> TruncLaurent {
    x.tau(k)
}

/// Substitutes `t = xi` using the growth certificate of `x`.
pub fn ts_eval_t(x: &TSeries, xi: crate::ffield::Fe) -> crate::Result<TruncLaurent> {
    x.eval_t(xi)
}

/// Expansion of a rational function of `theta` alone, known below
/// `theta^{-prec}`.
pub fn laurent_of_ratfunc(r: &crate::exact::RatFunc, prec: i64) -> crate::Result<TruncLaurent> {
    if !r.is_theta_only() {
        return Err(crate::Error::InvalidArgument(
            "rational function involves t".into(),
        ));
    }
    let f = r.field();
    let num = TruncLaurent::from_poly(f, r.num().row(0));
    let den = TruncLaurent::from_poly(f, r.den().row(0));
    let cap = prec - num.valuation().min(0);
    Ok(num.div(&den, cap)?.truncate(prec))
}

/// Expansion of `r(t, theta)` as a power series in `t` through `t^nt` with
/// coefficients known below `theta^{-prec}`; the `t`-constant term of the
/// denominator must be nonzero.
pub fn tseries_of_ratfunc(
    r: &crate::exact::RatFunc,
    nt: usize,
    prec: i64,
) -> crate::Result<TSeries> {
    let num = TSeries::from_ttpoly(r.num(), nt);
    let den = TSeries::from_ttpoly(r.den(), nt);
    let spread = r.num().theta_degree().unwrap_or(0) + r.den().theta_degree().unwrap_or(0);
    let mut cap = prec + (nt as i64 + 2) * (spread as i64 + 1);
    loop {
        let x = num.mul(&den.inv(cap)?);
        if x.prec() >= prec {
            return Ok(x.truncate_prec(prec));
        }
        cap += prec - x.prec();
    }
}
