//! Exact arithmetic in `F_q[t, theta]` and `F_q(t, theta)`.
//!
//! `tau` fixes `t` and sends `theta` to `theta^q`.

mod linsolve;
mod ratfunc;
mod ttpoly;

pub use linsolve::solve_linear;
pub use ratfunc::{rf_arith, RatFunc, RfOp};
pub use ttpoly::TTPoly;

/// `tau^k` on a rational function.
pub fn tau_exact(x: &RatFunc, k: u32) -> RatFunc {
    x.tau(k)
}
