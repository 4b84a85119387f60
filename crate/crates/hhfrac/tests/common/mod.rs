//! Brute-force helpers shared by the integration tests.

#![allow(dead_code)]

use hhfrac::quad::{integrate, QuadratureSpec};

/// Direct adaptive quadrature at tight tolerance. The independent route the
/// closed forms get checked against; panics if it fails to converge because
/// every oracle integrand in these tests is integrable.
pub fn oracle<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let spec = QuadratureSpec { abs_tol: 1e-13, rel_tol: 1e-13, ..QuadratureSpec::default() };
    integrate(f, a, b, &spec).expect("oracle integral").value
}

pub fn rel_diff(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).abs() / scale
    }
}

/// F(a,b;c;z) through the Euler integral, split at 1/2 with the power
/// substitutions s = t^b and s = (1-t)^(c-b) so both endpoint singularities
/// turn into bounded integrands before Gauss-Kronrod sees them.
pub fn f21_euler_oracle(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let d = c - b;
    let left = oracle(
        |s| {
            let t = s.powf(1.0 / b);
            (1.0 - t).powf(d - 1.0) * (1.0 - z * t).powf(-a)
        },
        0.0,
        0.5f64.powf(b),
    ) / b;
    let right = oracle(
        |s| {
            let u = s.powf(1.0 / d);
            (1.0 - u).powf(b - 1.0) * (1.0 - z + z * u).powf(-a)
        },
        0.0,
        0.5f64.powf(d),
    ) / d;
    (left + right) / hhfrac::specfun::beta_fn(b, d).unwrap()
}
