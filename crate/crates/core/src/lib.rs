//! Orthogonal polynomials on the unit circle for weights whose Szegő function
//! continues analytically across the circle.
//!
//! The monic polynomials `Φ_n`, Verblunsky coefficients and leading
//! coefficients are computed from the iterated Cauchy-transform
//! representation ([`cauchy_ops`], [`canonical`]) and checked against a
//! Levinson/Toeplitz oracle run in double-double arithmetic ([`oracle`]).
//! Closed-form asymptotics (dominant poles, clock law, saddle points) live in
//! [`asymptotics`].

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod asymptotics;
pub mod canonical;
pub mod cauchy_ops;
pub mod dd;
mod error;
pub mod fft;
pub mod oracle;
pub mod poly;
pub mod real;
pub mod special;
pub mod szego;
pub mod weights;

pub use error::{Error, ErrorClass, Result};
pub use num_complex::Complex;

/// Complex binary64.
pub type C64 = Complex<f64>;
