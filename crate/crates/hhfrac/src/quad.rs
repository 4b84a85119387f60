//! Adaptive quadrature on finite intervals.
//!
//! A 15-point Gauss-Kronrod rule supplies the per-panel estimate and error;
//! the driver repeatedly bisects the panel with the largest error until the
//! summed error estimate meets tolerance or the panel budget is exhausted.
//! All nodes are interior, so integrable endpoint singularities never get
//! sampled at the singular point itself.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and refinement budget for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of panels the interval may be split into.
    pub max_subdivisions: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 1 << 20,
        }
    }
}

impl QuadratureSpec {
    /// Same budget with both tolerances tightened by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        QuadratureSpec {
            abs_tol: self.abs_tol / factor,
            rel_tol: self.rel_tol / factor,
            max_subdivisions: self.max_subdivisions,
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Converged estimate, its error bound, and the panels spent obtaining it.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub panels: u32,
}

// 15-point Kronrod abscissae (positive half, descending) with their weights,
// and the weights of the embedded 7-point Gauss rule. QUADPACK values.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Maps the raw |kronrod - gauss| difference to a realistic error estimate,
/// following QUADPACK's heuristic.
fn rescale_error(err: f64, result_abs: f64, result_asc: f64) -> f64 {
    let mut err = err.abs();
    if result_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / result_asc).powf(1.5);
        err = if scale < 1.0 { result_asc * scale } else { result_asc };
    }
    if result_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * result_abs;
        if min_err > err {
            err = min_err;
        }
    }
    err
}

/// One panel evaluation: returns (kronrod estimate, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut fv1 = [0.0f64; 8];
    let mut fv2 = [0.0f64; 8];
    fv1[7] = fc;
    fv2[7] = fc;

    let mut result_gauss = fc * WG[3];
    let mut result_kronrod = fc * WGK[7];

    for j in 0..3 {
        let jtw = 2 * j + 1;
        let abscissa = half * XGK[jtw];
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        result_gauss += WG[j] * (f1 + f2);
        result_kronrod += WGK[jtw] * (f1 + f2);
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let abscissa = half * XGK[jtwm1];
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        result_kronrod += WGK[jtwm1] * (f1 + f2);
    }

    let mean = result_kronrod * 0.5;
    let mut result_asc = WGK[7] * (fc - mean).abs();
    let mut result_abs = WGK[7] * fc.abs();
    for j in 0..7 {
        result_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
        result_abs += WGK[j] * (fv1[j].abs() + fv2[j].abs());
    }

    let err = rescale_error((result_kronrod - result_gauss) * half, result_abs * half, result_asc * half);
    (result_kronrod * half, err)
}

// Panels are refined worst-error-first; ties broken toward the leftmost
// panel so refinement order (and thus the float result) is deterministic.
struct Panel {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.a == other.a
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Integrates `f` over `[a, b]` to the requested tolerance.
///
/// Fails with [`Error::ToleranceNotMet`] (carrying the achieved error
/// estimate) when the panel budget runs out, and with [`Error::Domain`]
/// if the integrand produces a non-finite value at a quadrature node.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature> {
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(Error::domain(format!("integrate: bad interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(Quadrature { value: 0.0, abs_error: 0.0, panels: 0 });
    }

    let (value, err) = gk15(&f, a, b);
    if !value.is_finite() {
        return Err(Error::domain("integrate: integrand produced a non-finite value"));
    }

    let mut heap = BinaryHeap::new();
    heap.push(Panel { err, a, b, value });
    let mut panels: u32 = 1;
    let mut total_value = value;
    let mut total_err = err;
    // Panels too narrow to bisect in f64 are parked here as-is.
    let mut parked_value = 0.0;
    let mut parked_err = 0.0;

    loop {
        if total_err + parked_err <= spec.target(total_value + parked_value) {
            return Ok(Quadrature {
                value: total_value + parked_value,
                abs_error: total_err + parked_err,
                panels,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => {
                // Everything is parked; report what was achieved.
                return Err(Error::ToleranceNotMet {
                    achieved: parked_err,
                    requested: spec.target(parked_value),
                });
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            total_value -= worst.value;
            total_err -= worst.err;
            parked_value += worst.value;
            parked_err += worst.err;
            continue;
        }
        if panels >= spec.max_subdivisions {
            return Err(Error::ToleranceNotMet {
                achieved: total_err + parked_err,
                requested: spec.target(total_value + parked_value),
            });
        }

        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        if !v1.is_finite() || !v2.is_finite() {
            return Err(Error::domain("integrate: integrand produced a non-finite value"));
        }
        total_value += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        panels += 1;
        heap.push(Panel { err: e1, a: worst.a, b: mid, value: v1 });
        heap.push(Panel { err: e2, a: mid, b: worst.b, value: v2 });
    }
}
