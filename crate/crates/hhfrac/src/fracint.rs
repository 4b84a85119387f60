//! Riemann-Liouville fractional integrals and the deviation functional they
//! induce on an interval:
//!
//!   I_f = (f(a)+f(b))/2 - G(th+1)/2 * (ab/(b-a))^th * (J_right + J_left)
//!
//! where the two J terms are fractional integrals of f(1/t) over
//! [1/b, 1/a]. For kernels with th < 1 the substitution s = (x-t)^th turns
//! the integrable singularity into a bounded integrand before handing off
//! to the adaptive quadrature.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::{integrate, Quadrature, QuadratureSpec};
use crate::specfun::gamma_fn;

/// Narrowest interval the closed-form constants evaluate stably on.
pub const MIN_WIDTH: f64 = 1e-6;

/// A positive interval 0 < a < b with b - a >= [`MIN_WIDTH`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a <= 0.0 || b <= a {
            return Err(Error::domain(format!("interval: need 0 < a < b, got [{a}, {b}]")));
        }
        if b - a < MIN_WIDTH {
            return Err(Error::DegenerateInterval { a, b, min: MIN_WIDTH });
        }
        Ok(Interval { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.a <= other.a && other.b <= self.b
    }

    /// Harmonic mean 2ab/(a+b) of the endpoints.
    pub fn harmonic_mean(&self) -> f64 {
        2.0 * self.a * self.b / (self.a + self.b)
    }
}

/// Fractional order th > 0. th = 0 is rejected: J^0 is the identity by
/// convention and callers that want f(x) should evaluate f directly (the
/// limit th -> 0+ of the integrals recovers it, see the module tests).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || theta <= 0.0 {
            return Err(Error::domain(format!(
                "fractional order: need theta > 0, got {theta} (theta = 0 is the identity by convention)"
            )));
        }
        Ok(FractionalOrder(theta))
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

pub type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A named test function with its exact derivative and validity domain.
/// Construction cross-checks `f_prime` against a centered finite difference
/// of `f` so a corpus member can never carry a mismatched derivative.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    f: Evaluator,
    f_prime: Evaluator,
    domain: Interval,
    claimed_classes: Vec<String>,
}

impl TestFunction {
    pub fn new(
        name: impl Into<String>,
        f: Evaluator,
        f_prime: Evaluator,
        domain: Interval,
        claimed_classes: Vec<String>,
    ) -> Result<Self> {
        let tf = TestFunction { name: name.into(), f, f_prime, domain, claimed_classes };
        tf.check_derivative()?;
        Ok(tf)
    }

    // |f'(x) - (f(x+h) - f(x-h)) / 2h| <= 1e-6 at h = 1e-5 on a 33-point grid.
    fn check_derivative(&self) -> Result<()> {
        const H: f64 = 1e-5;
        const TOL: f64 = 1e-6;
        let lo = self.domain.a() + H;
        let hi = self.domain.b() - H;
        for i in 0..33 {
            let x = lo + (hi - lo) * i as f64 / 32.0;
            let fd = ((self.f)(x + H) - (self.f)(x - H)) / (2.0 * H);
            let exact = (self.f_prime)(x);
            if !(fd - exact).abs().is_finite() || (fd - exact).abs() > TOL {
                return Err(Error::domain(format!(
                    "test function {}: f_prime({x}) = {exact} but finite difference gives {fd}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn claimed_classes(&self) -> &[String] {
        &self.claimed_classes
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn eval_prime(&self, x: f64) -> f64 {
        (self.f_prime)(x)
    }

    pub fn f(&self) -> Evaluator {
        self.f.clone()
    }

    pub fn f_prime(&self) -> Evaluator {
        self.f_prime.clone()
    }
}

/// Left-sided Riemann-Liouville integral
/// J^th_{a+} f(x) = 1/G(th) * int_a^x (x-t)^(th-1) f(t) dt, for x > a >= 0.
pub fn rl_left<F: Fn(f64) -> f64>(
    theta: FractionalOrder,
    a: f64,
    x: f64,
    f: F,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    if !a.is_finite() || !x.is_finite() || a < 0.0 || x <= a {
        return Err(Error::domain(format!("rl_left: need x > a >= 0, got a = {a}, x = {x}")));
    }
    let th = theta.get();
    if th >= 1.0 {
        // Kernel is bounded; integrate directly.
        let g = gamma_fn(th)?;
        let q = integrate(|t| (x - t).powf(th - 1.0) * f(t), a, x, spec)?;
        Ok(scaled(q, 1.0 / g))
    } else {
        // s = (x-t)^th, ds = -th (x-t)^(th-1) dt absorbs the singular kernel.
        let g = gamma_fn(th + 1.0)?;
        let upper = (x - a).powf(th);
        let q = integrate(|s| f(x - s.powf(1.0 / th)), 0.0, upper, spec)?;
        Ok(scaled(q, 1.0 / g))
    }
}

/// Right-sided mirror J^th_{b-} f(x) = 1/G(th) * int_x^b (t-x)^(th-1) f(t) dt,
/// for 0 <= x < b.
pub fn rl_right<F: Fn(f64) -> f64>(
    theta: FractionalOrder,
    b: f64,
    x: f64,
    f: F,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    if !b.is_finite() || !x.is_finite() || x < 0.0 || x >= b {
        return Err(Error::domain(format!("rl_right: need 0 <= x < b, got b = {b}, x = {x}")));
    }
    let th = theta.get();
    if th >= 1.0 {
        let g = gamma_fn(th)?;
        let q = integrate(|t| (t - x).powf(th - 1.0) * f(t), x, b, spec)?;
        Ok(scaled(q, 1.0 / g))
    } else {
        let g = gamma_fn(th + 1.0)?;
        let upper = (b - x).powf(th);
        let q = integrate(|s| f(x + s.powf(1.0 / th)), 0.0, upper, spec)?;
        Ok(scaled(q, 1.0 / g))
    }
}

fn scaled(q: Quadrature, factor: f64) -> Quadrature {
    Quadrature {
        value: q.value * factor,
        abs_error: q.abs_error * factor.abs(),
        panels: q.panels,
    }
}

/// The fractional mean G(th+1)/2 * (ab/(b-a))^th * (J_right + J_left) of f
/// over the interval; the middle term of the sandwich.
fn fractional_mean(
    theta: FractionalOrder,
    iv: &Interval,
    f: &TestFunction,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    let (a, b) = (iv.a(), iv.b());
    if !f.domain().contains_interval(iv) {
        return Err(Error::domain(format!(
            "{}: [{a}, {b}] outside the function domain",
            f.name()
        )));
    }
    let th = theta.get();
    let inv = |t: f64| f.eval(1.0 / t);
    // J^th_{(1/a)-} (f o g)(1/b) and J^th_{(1/b)+} (f o g)(1/a), g(x) = 1/x.
    let j_right = rl_right(theta, 1.0 / a, 1.0 / b, inv, spec)?;
    let j_left = rl_left(theta, 1.0 / b, 1.0 / a, inv, spec)?;
    let weight = gamma_fn(th + 1.0)? / 2.0 * (a * b / (b - a)).powf(th);
    if !weight.is_finite() {
        return Err(Error::Overflow("fractional mean weight"));
    }
    Ok(Quadrature {
        value: weight * (j_right.value + j_left.value),
        abs_error: weight * (j_right.abs_error + j_left.abs_error),
        panels: j_right.panels + j_left.panels,
    })
}

/// Deviation of the endpoint average from the fractional mean:
/// (f(a)+f(b))/2 - G(th+1)/2 * (ab/(b-a))^th * (J_right + J_left).
pub fn i_f(
    theta: FractionalOrder,
    iv: &Interval,
    f: &TestFunction,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    let mean = fractional_mean(theta, iv, f, spec)?;
    let end_avg = 0.5 * (f.eval(iv.a()) + f.eval(iv.b()));
    Ok(Quadrature {
        value: end_avg - mean.value,
        abs_error: mean.abs_error,
        panels: mean.panels,
    })
}

/// Same deviation written as a single weighted integral of f':
/// ab(b-a)/2 * int_0^1 (t^th - (1-t)^th) / (ta+(1-t)b)^2 * f'(ab/(ta+(1-t)b)) dt.
/// Computed along an independent route, it cross-checks [`i_f`].
pub fn lemma_rhs(
    theta: FractionalOrder,
    iv: &Interval,
    f: &TestFunction,
    spec: &QuadratureSpec,
) -> Result<Quadrature> {
    let (a, b) = (iv.a(), iv.b());
    if !f.domain().contains_interval(iv) {
        return Err(Error::domain(format!(
            "{}: [{a}, {b}] outside the function domain",
            f.name()
        )));
    }
    let th = theta.get();
    let weight = a * b * (b - a) / 2.0;
    let q = integrate(
        |t| {
            let d = t * a + (1.0 - t) * b;
            (t.powf(th) - (1.0 - t).powf(th)) / (d * d) * f.eval_prime(a * b / d)
        },
        0.0,
        1.0,
        spec,
    )?;
    Ok(scaled(q, weight))
}

/// The three members of the sandwich
/// f(2ab/(a+b)) <= fractional mean <= (f(a)+f(b))/2.
#[derive(Clone, Copy, Debug)]
pub struct Sandwich {
    pub left: f64,
    pub mid: f64,
    pub right: f64,
    pub abs_error: f64,
    pub panels: u32,
}

pub fn hh_sandwich(
    theta: FractionalOrder,
    iv: &Interval,
    f: &TestFunction,
    spec: &QuadratureSpec,
) -> Result<Sandwich> {
    let mean = fractional_mean(theta, iv, f, spec)?;
    Ok(Sandwich {
        left: f.eval(iv.harmonic_mean()),
        mid: mean.value,
        right: 0.5 * (f.eval(iv.a()) + f.eval(iv.b())),
        abs_error: mean.abs_error,
        panels: mean.panels,
    })
}
