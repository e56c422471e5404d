//! Digamma-weighted power series, parameter derivatives of Bessel, Wright and
//! Mittag-Leffler functions, and a harness that checks closed forms against
//! brute-force evaluation.
//!
//! Every closed form is evaluated from special functions that live in this
//! crate; every left-hand side is evaluated by direct summation or
//! quadrature, never by the formula it is meant to test.

pub mod error;
pub mod hyper;
pub mod identities;
pub mod meijerg;
pub mod paramderiv;
pub mod series;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;

/// Shorthand for a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Real number as a complex value.
#[inline]
pub fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}
