//! Numerics for subharmonic functions in R^n (n >= 3) whose Riesz masses
//! lie on the negative x₁-axis.
//!
//! The crate evaluates growth indicators through Ferrers functions,
//! Mellin transforms of the Riesz and Weierstrass kernels, exceptional
//! zero sets, Tauberian constants, and simulates potentials directly from
//! mass models so that every closed form has an independent quadrature
//! counterpart.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod indicator;
pub mod kernels;
pub mod mellin;
pub mod potential;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};

pub use kernels::ProblemParams;
pub use specfun::ComplexScalar;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
