//! Numerical verification toolkit for Hermite-Hadamard type bounds on
//! fractional integral means of functions with harmonically convex
//! derivative powers.
//!
//! The crate is organized in layers:
//! - [`quad`]: adaptive Gauss-Kronrod quadrature with error control,
//! - [`specfun`]: gamma, beta and the Gauss hypergeometric function,
//! - [`fracint`]: Riemann-Liouville integrals, the trapezoid-mean gap
//!   functional and its weighted-integral identity,
//! - [`convexity`]: sampling certification of (harmonic) convexity classes,
//! - [`bounds`]: closed-form constants and the theorem bounds,
//! - [`harness`]: end-to-end verification records, sweeps and reports.

pub mod bounds;
pub mod convexity;
pub mod error;
pub mod fracint;
pub mod harness;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use fracint::{FractionalOrder, Interval, TestFunction};
pub use quad::QuadratureSpec;
