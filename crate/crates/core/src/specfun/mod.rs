//! Special functions on binary64 complex scalars.
//!
//! Accuracy targets: relative 1e-13 for gamma and log-gamma with |z| <= 50,
//! relative 1e-12 for the exponential integrals, and absolute 1e-10 (scaled by
//! the magnitude of the value when it exceeds one) for the Bessel functions
//! with 0 < x <= 30.

mod bessel;
mod gamma;
mod incomplete;
mod polylog;

pub use bessel::{bessel, BesselKind};
pub(crate) use bessel::tail_cutoff;
pub use gamma::{
    beta, cos_pi, digamma, gamma, is_nonpositive_integer, lgamma_real, log_gamma, pochhammer, psi_over_gamma, rgamma,
    sin_pi, sin_pi_c, BERNOULLI_2K,
};
pub use incomplete::{
    exp_integral, gamma_upper_0, inc_beta, inc_beta_half_integer, inc_gamma_lower, inc_gamma_lower_scaled, ExpIntKind,
};
pub use polylog::{dilog, lerch_phi};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;
