//! Special functions against frozen high-precision references and against
//! the Euler integral evaluated by an independent quadrature route.

mod common;

use approx::assert_relative_eq;
use common::{f21_euler_oracle, oracle, rel_diff};
use hhfrac::specfun::{beta_fn, gamma_fn, hyp2f1, Hyp2F1Args};
use proptest::prelude::*;

fn f21(a: f64, b: f64, c: f64, z: f64) -> f64 {
    hyp2f1(&Hyp2F1Args::new(a, b, c, z).unwrap()).unwrap()
}

#[test]
fn gamma_reference_values() {
    assert_relative_eq!(gamma_fn(0.5).unwrap(), std::f64::consts::PI.sqrt(), max_relative = 1e-14);
    assert_relative_eq!(gamma_fn(6.0).unwrap(), 120.0, max_relative = 1e-14);
    assert_relative_eq!(gamma_fn(10.3).unwrap(), 716430.68906237524, max_relative = 1e-13);
    assert_relative_eq!(gamma_fn(0.05).unwrap(), 19.470085311255513, max_relative = 1e-13);
    // Near the overflow edge the log-space path takes over.
    assert_relative_eq!(gamma_fn(171.0).unwrap(), 7.2574156153079990e306, max_relative = 1e-12);
}

#[test]
fn gamma_domain_and_overflow() {
    assert!(gamma_fn(0.0).is_err());
    assert!(gamma_fn(-3.0).is_err());
    assert!(gamma_fn(f64::NAN).is_err());
    assert!(gamma_fn(172.0).is_err());
}

#[test]
fn beta_reference_and_integral() {
    assert_relative_eq!(beta_fn(2.5, 3.7).unwrap(), 0.032727368606257841, max_relative = 1e-13);
    // B(x, y) = int_0^1 t^(x-1) (1-t)^(y-1) dt
    let int = oracle(|t| t.powf(1.5) * (1.0 - t).powf(2.7), 0.0, 1.0);
    assert_relative_eq!(beta_fn(2.5, 3.7).unwrap(), int, max_relative = 1e-11);
}

#[test]
fn hyp2f1_reference_values() {
    assert_relative_eq!(f21(0.3, 1.7, 2.4, 0.75), 1.2915432429136158, max_relative = 1e-12);
    assert_relative_eq!(f21(2.0, 1.0, 3.5, -0.8), 0.69829959774716468, max_relative = 1e-12);
    assert_relative_eq!(f21(1.2, 0.8, 2.1, 0.95), 2.7763307697614145, max_relative = 1e-12);
    assert_eq!(f21(1.7, 0.4, 2.2, 0.0), 1.0);
}

#[test]
fn hyp2f1_log_form() {
    // F(1,1;2;z) = -ln(1-z)/z across every evaluation branch.
    for z in [-0.9f64, -0.5, -0.1, 0.1, 0.3, 0.5, 0.8, 0.95] {
        let expect = -(1.0 - z).ln() / z;
        assert_relative_eq!(f21(1.0, 1.0, 2.0, z), expect, max_relative = 1e-12);
    }
}

#[test]
fn hyp2f1_rejects_inadmissible_arguments() {
    assert!(Hyp2F1Args::new(1.0, 0.0, 2.0, 0.5).is_err()); // b = 0
    assert!(Hyp2F1Args::new(1.0, 2.0, 2.0, 0.5).is_err()); // c = b
    assert!(Hyp2F1Args::new(1.0, 1.0, 2.0, 1.0).is_err()); // z = 1
    assert!(Hyp2F1Args::new(1.0, 1.0, 2.0, f64::NAN).is_err());
}

proptest! {
    #[test]
    fn gamma_recurrence(x in 0.1f64..40.0) {
        let lhs = gamma_fn(x + 1.0).unwrap();
        let rhs = x * gamma_fn(x).unwrap();
        prop_assert!(rel_diff(lhs, rhs) < 1e-12, "G(x+1) != x G(x) at {x}: {lhs} vs {rhs}");
    }

    #[test]
    fn beta_symmetry_and_unit_argument(x in 0.05f64..30.0, y in 0.05f64..30.0) {
        let bxy = beta_fn(x, y).unwrap();
        let byx = beta_fn(y, x).unwrap();
        prop_assert!(rel_diff(bxy, byx) < 1e-13);
        let bx1 = beta_fn(x, 1.0).unwrap();
        prop_assert!(rel_diff(bx1, 1.0 / x) < 1e-12);
    }

    #[test]
    fn hyp2f1_euler_integral_consistency(
        a in 0.1f64..3.0,
        b in 0.3f64..3.0,
        extra in 0.3f64..3.0,
        z in -0.9f64..0.9,
    ) {
        // The library never evaluates 2F1 by this route for |z| <= 0.5
        // (series there), so agreement is a cross-check, not an identity.
        let c = b + extra;
        let series = f21(a, b, c, z);
        let integral = f21_euler_oracle(a, b, c, z);
        prop_assert!(
            rel_diff(series, integral) < 1e-8,
            "2F1({a},{b};{c};{z}): {series} vs {integral}"
        );
    }
}
