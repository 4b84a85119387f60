//! Fractional integrals against closed forms, frozen references and the
//! weighted-integral identity that re-derives the same deviation.

mod common;

use approx::assert_relative_eq;
use common::oracle;
use hhfrac::fracint::{hh_sandwich, i_f, lemma_rhs, rl_left, rl_right};
use hhfrac::harness::corpus;
use hhfrac::quad::QuadratureSpec;
use hhfrac::specfun::gamma_fn;
use hhfrac::{FractionalOrder, Interval};
use proptest::prelude::*;

fn th(v: f64) -> FractionalOrder {
    FractionalOrder::new(v).unwrap()
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn rl_of_unit_function_closed_form() {
    // J^th_{a+} 1 (x) = (x-a)^th / G(th+1), same on the right side.
    for theta in [0.25, 0.5, 1.0, 1.5] {
        for (a, x) in [(0.0f64, 1.0), (0.3, 1.7), (1.0, 4.0)] {
            let expect = (x - a).powf(theta) / gamma_fn(theta + 1.0).unwrap();
            let left = rl_left(th(theta), a, x, |_| 1.0, &spec()).unwrap();
            assert_relative_eq!(left.value, expect, max_relative = 1e-9);
            let right = rl_right(th(theta), x, a, |_| 1.0, &spec()).unwrap();
            assert_relative_eq!(right.value, expect, max_relative = 1e-9);
        }
    }
}

#[test]
fn rl_of_square_frozen_references() {
    // J^0.5_{0+} t^2 at x = 1 is G(3)/G(3.5); mpmath gives the digits.
    let left = rl_left(th(0.5), 0.0, 1.0, |t| t * t, &spec()).unwrap();
    assert_relative_eq!(left.value, 0.60180222245094004, max_relative = 1e-10);
    let right = rl_right(th(0.75), 2.0, 0.5, |t| t * t, &spec()).unwrap();
    assert_relative_eq!(right.value, 2.2217267777634786, max_relative = 1e-10);
}

#[test]
fn rl_domain_errors() {
    assert!(rl_left(th(0.5), 1.0, 1.0, |_| 1.0, &spec()).is_err()); // x = a
    assert!(rl_left(th(0.5), -0.1, 1.0, |_| 1.0, &spec()).is_err()); // a < 0
    assert!(rl_right(th(0.5), 1.0, 1.0, |_| 1.0, &spec()).is_err()); // x = b
    assert!(rl_right(th(0.5), 1.0, 2.0, |_| 1.0, &spec()).is_err()); // x > b
}

#[test]
fn deviation_frozen_references() {
    let f = corpus();
    let half_square = f.iter().find(|f| f.name() == "half-square").unwrap();
    let identity = f.iter().find(|f| f.name() == "identity").unwrap();
    let neg_log = f.iter().find(|f| f.name() == "neg-log").unwrap();

    let iv = Interval::new(1.0, 2.0).unwrap();
    let d = i_f(th(0.5), &iv, half_square, &spec()).unwrap();
    assert_relative_eq!(d.value, 0.20149460826621823, max_relative = 1e-9);

    // theta = 1 collapses to (f(a)+f(b))/2 minus the harmonic integral mean;
    // for f(x) = x that is 1.5 - 2 ln 2.
    let d = i_f(th(1.0), &iv, identity, &spec()).unwrap();
    assert_relative_eq!(d.value, 1.5 - 2.0 * std::f64::consts::LN_2, max_relative = 1e-9);

    // The deviation is signed; concave-along-reciprocals functions go negative.
    let iv = Interval::new(1.0, 4.0).unwrap();
    let d = i_f(th(0.25), &iv, neg_log, &spec()).unwrap();
    assert_relative_eq!(d.value, -0.084270108647232522, max_relative = 1e-9);
}

#[test]
fn unit_order_mean_matches_harmonic_integral_mean() {
    // At theta = 1 the sandwich middle is ab/(b-a) * int_{1/b}^{1/a} f(1/t) dt.
    for f in corpus() {
        for (a, b) in [(1.0, 2.0), (0.5, 3.0)] {
            let iv = Interval::new(a, b).unwrap();
            let s = hh_sandwich(th(1.0), &iv, &f, &spec()).unwrap();
            let mean = a * b / (b - a) * oracle(|t| f.eval(1.0 / t), 1.0 / b, 1.0 / a);
            assert_relative_eq!(s.mid, mean, max_relative = 1e-9, epsilon = 1e-12);
        }
    }
}

#[test]
fn deviation_outside_domain_errors() {
    let f = corpus();
    let iv = Interval::new(0.01, 2.0).unwrap(); // corpus domain starts at 0.05
    assert!(i_f(th(0.5), &iv, &f[0], &spec()).is_err());
    assert!(lemma_rhs(th(0.5), &iv, &f[0], &spec()).is_err());
    assert!(hh_sandwich(th(0.5), &iv, &f[0], &spec()).is_err());
}

proptest! {
    #[test]
    fn rl_is_linear(
        theta in 0.15f64..2.5,
        a in 0.0f64..2.0,
        w in 0.5f64..4.0,
        c1 in -3.0f64..3.0,
        c2 in -3.0f64..3.0,
    ) {
        let x = a + w;
        let f = |t: f64| t * t;
        let g = |t: f64| (1.0 + t).ln();
        let combined = rl_left(th(theta), a, x, |t| c1 * f(t) + c2 * g(t), &spec()).unwrap();
        let parts = c1 * rl_left(th(theta), a, x, f, &spec()).unwrap().value
            + c2 * rl_left(th(theta), a, x, g, &spec()).unwrap().value;
        prop_assert!(
            (combined.value - parts).abs() <= 1e-8 * (1.0 + parts.abs()),
            "rl_left not linear at theta={theta}, a={a}, x={x}: {} vs {parts}",
            combined.value
        );
    }

    #[test]
    fn deviation_routes_agree(
        which in 0usize..5,
        theta in 0.1f64..3.0,
        a in 0.05f64..7.0,
        w in 0.5f64..8.0,
    ) {
        let f = &corpus()[which];
        let iv = Interval::new(a, a + w).unwrap();
        let direct = i_f(th(theta), &iv, f, &spec()).unwrap();
        let identity = lemma_rhs(th(theta), &iv, f, &spec()).unwrap();
        let gap = (direct.value - identity.value).abs();
        prop_assert!(
            gap <= 1e-7,
            "{} theta={theta} [{a}, {}]: gap {gap}",
            f.name(),
            a + w
        );
    }

    #[test]
    fn sandwich_orders_for_increasing_convex_powers(
        k in 1.0f64..4.0,
        theta in 0.1f64..3.0,
        a in 0.1f64..5.0,
        w in 0.5f64..5.0,
    ) {
        // x^k with k >= 1 is harmonically convex on (0, inf), so the three
        // sandwich members must come out ordered for every order theta.
        let f = hhfrac::TestFunction::new(
            "power",
            std::sync::Arc::new(move |x: f64| x.powf(k)),
            std::sync::Arc::new(move |x: f64| k * x.powf(k - 1.0)),
            Interval::new(0.05, 16.0).unwrap(),
            vec![],
        )
        .unwrap();
        let iv = Interval::new(a, a + w).unwrap();
        let s = hh_sandwich(th(theta), &iv, &f, &spec()).unwrap();
        let tol = 1e-9 * (1.0 + s.right.abs());
        prop_assert!(s.left <= s.mid + tol, "left {} > mid {}", s.left, s.mid);
        prop_assert!(s.mid <= s.right + tol, "mid {} > right {}", s.mid, s.right);
    }
}
