//! Exact function-field arithmetic around the Carlitz module.
//!
//! The crate computes, exactly or to a certified truncation window, the
//! objects attached to the series `L(chi_t, alpha) = sum_{a monic} a(t) a^{-alpha}`
//! over `A = F_q[theta]`: the Carlitz exponential and period, the
//! trivialisation series `s_Car`, Drinfeld modular forms and their
//! u-expansions, the deformation series `d_2`, and the rational functions
//! `lambda_alpha` in `F_q(t, theta)`.
//!
//! Module map:
//!
//! * [`ffield`]: `F_q` and its extensions `F_{q^r}`.
//! * [`apoly`]: the ring `A = F_q[theta]`, brackets, Carlitz factorials and the Carlitz action.
//! * [`exact`]: `F_q[t, theta]`, `F_q(t, theta)`, the twist `theta -> theta^q`, fraction-free solving.
//! * [`series`]: certified truncated Laurent series in `theta^{-1/m}` and power series in `t` over them.
//! * [`carlitz`]: period, exponential, `s_Car / pi`, product formulas and the Mahler function.
//! * [`lseries`]: zeta values, `L(chi_t, alpha)` by direct sum and Euler product, Dirichlet values.
//! * [`uexp`]: Goss polynomials, `u_a`, Eisenstein series, `g`, `h`, `Delta`, `d_2`.
//! * [`lambda`]: the solve for `lambda_alpha` and its consistency checks.
//!
//! Everything here is `no_std` with `alloc`; IO, file formats and the
//! command line live in the companion `lchi` crate.

#![no_std]

extern crate alloc;

pub mod apoly;
pub mod carlitz;
mod error;
pub mod exact;
pub mod ffield;
pub mod lambda;
pub mod lseries;
pub mod ring;
pub mod series;
pub mod uexp;
pub mod upoly;

pub use error::{Error, Result};
