//! Sampling-based certification of (harmonic) convexity classes.
//!
//! A certificate is evidence, not proof: the defining inequality is checked
//! on a deterministic 17x17x17 grid over (x, y, t) plus a seeded batch of
//! random triples. Any violation yields a counterexample witness, which is
//! a proof of failure.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fracint::{Interval, TestFunction};

/// Points per axis of the deterministic grid (endpoints included).
pub const GRID_POINTS: usize = 17;

/// Default number of random triples drawn after the grid.
pub const DEFAULT_BUDGET: u32 = 10_000;

/// Violation is declared only beyond this slack: RHS - LHS < -1e-9 (1 + |LHS|).
pub const SLACK_TOL: f64 = 1e-9;

/// Fraction of skipped samples above which a clean run is inconclusive.
const MAX_SKIP_FRACTION: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConvexityClass {
    /// f(xy/(tx+(1-t)y)) <= t f(y) + (1-t) f(x)
    HarmonicallyConvex,
    /// f(mxy/(mty+(1-t)x)) <= t^alpha f(x) + m(1-t^alpha) f(y)
    HarmonicallyAlphaM { alpha: f64, m: f64 },
    /// f(tx + m(1-t)y) <= t^alpha f(x) + m(1-t^alpha) f(y)
    AlphaM { alpha: f64, m: f64 },
}

impl ConvexityClass {
    pub fn harmonically_alpha_m(alpha: f64, m: f64) -> Result<Self> {
        check_alpha_m(alpha, m)?;
        Ok(ConvexityClass::HarmonicallyAlphaM { alpha, m })
    }

    pub fn alpha_m(alpha: f64, m: f64) -> Result<Self> {
        check_alpha_m(alpha, m)?;
        Ok(ConvexityClass::AlphaM { alpha, m })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ConvexityClass::HarmonicallyConvex => Ok(()),
            ConvexityClass::HarmonicallyAlphaM { alpha, m } | ConvexityClass::AlphaM { alpha, m } => {
                check_alpha_m(alpha, m)
            }
        }
    }

    /// True when the class evaluates t^alpha with alpha = 0, where the
    /// verdict depends on the 0^0 = 1 convention at t = 0.
    pub fn convention_dependent(&self) -> bool {
        matches!(
            *self,
            ConvexityClass::HarmonicallyAlphaM { alpha: 0.0, .. } | ConvexityClass::AlphaM { alpha: 0.0, .. }
        )
    }

    /// Evaluates the class's defining inequality at one triple. Returns the
    /// composed point and both sides; the inequality claims lhs <= rhs.
    pub fn inequality<F: Fn(f64) -> f64>(&self, f: &F, x: f64, y: f64, t: f64) -> InequalityEval {
        match *self {
            ConvexityClass::HarmonicallyConvex => {
                let point = x * y / (t * x + (1.0 - t) * y);
                InequalityEval { point, lhs: f(point), rhs: t * f(y) + (1.0 - t) * f(x) }
            }
            ConvexityClass::HarmonicallyAlphaM { alpha, m } => {
                let point = m * x * y / (m * t * y + (1.0 - t) * x);
                // 0^0 = 1 by f64 powf semantics, the adopted convention.
                let ta = t.powf(alpha);
                InequalityEval { point, lhs: f(point), rhs: ta * f(x) + m * (1.0 - ta) * f(y) }
            }
            ConvexityClass::AlphaM { alpha, m } => {
                let point = t * x + m * (1.0 - t) * y;
                let ta = t.powf(alpha);
                InequalityEval { point, lhs: f(point), rhs: ta * f(x) + m * (1.0 - ta) * f(y) }
            }
        }
    }
}

impl fmt::Display for ConvexityClass {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConvexityClass::HarmonicallyConvex => write!(out, "harmonically-convex"),
            ConvexityClass::HarmonicallyAlphaM { alpha, m } => {
                write!(out, "harmonically-({alpha},{m})-convex")
            }
            ConvexityClass::AlphaM { alpha, m } => write!(out, "({alpha},{m})-convex"),
        }
    }
}

fn check_alpha_m(alpha: f64, m: f64) -> Result<()> {
    if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!("convexity class: need alpha in [0, 1], got {alpha}")));
    }
    if !m.is_finite() || m <= 0.0 || m > 1.0 {
        return Err(Error::domain(format!("convexity class: need m in (0, 1], got {m}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
pub struct InequalityEval {
    pub point: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalityEval {
    /// Positive means the inequality was broken by that amount.
    pub fn violation(&self) -> f64 {
        self.lhs - self.rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertStatus {
    Pass,
    Fail,
    /// Too many composed points fell outside the evaluation domain.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

#[derive(Clone, Debug)]
pub struct CertificationResult {
    pub status: CertStatus,
    /// Triples whose inequality was actually evaluated.
    pub samples: u64,
    /// Triples whose composed point left the evaluation domain.
    pub skipped: u64,
    /// Largest lhs - rhs observed (negative values mean margin).
    pub max_violation: f64,
    /// Present exactly when status is Fail; re-evaluating the inequality
    /// at the witness reproduces max_violation.
    pub witness: Option<Witness>,
    pub seed: u64,
    /// Set when the verdict relies on the 0^0 = 1 convention (alpha = 0).
    pub convention_dependent: bool,
}

/// Certifies `f` against `cls` by sampling `region` for x and y and [0, 1]
/// for t. Composed points outside `eval_domain` are skipped and counted;
/// more than 1% skips without a violation makes the result inconclusive.
///
/// Deterministic: the grid is fixed and the random batch comes from a
/// ChaCha stream seeded with `seed`. The reported maximum is order
/// independent (ties broken toward the lexicographically smallest witness).
pub fn certify<F: Fn(f64) -> f64>(
    f: F,
    eval_domain: &Interval,
    cls: &ConvexityClass,
    region: &Interval,
    budget: u32,
    seed: u64,
) -> Result<CertificationResult> {
    cls.validate()?;
    if !eval_domain.contains_interval(region) {
        return Err(Error::domain(format!(
            "certify: region [{}, {}] outside evaluation domain [{}, {}]",
            region.a(),
            region.b(),
            eval_domain.a(),
            eval_domain.b()
        )));
    }

    let mut samples = 0u64;
    let mut skipped = 0u64;
    let mut best: Option<(f64, Witness, f64)> = None; // (violation, witness, lhs)

    let mut consider = |x: f64, y: f64, t: f64| {
        let eval = cls.inequality(&f, x, y, t);
        if !eval_domain.contains(eval.point) || !eval.lhs.is_finite() || !eval.rhs.is_finite() {
            skipped += 1;
            return;
        }
        samples += 1;
        let v = eval.violation();
        let candidate = (v, Witness { x, y, t }, eval.lhs);
        let replace = match &best {
            None => true,
            Some((bv, bw, _)) => {
                v > *bv
                    || (v == *bv
                        && (x, y, t) < (bw.x, bw.y, bw.t))
            }
        };
        if replace {
            best = Some(candidate);
        }
    };

    let (lo, hi) = (region.a(), region.b());
    let n = GRID_POINTS as f64 - 1.0;
    for i in 0..GRID_POINTS {
        let x = lo + (hi - lo) * i as f64 / n;
        for j in 0..GRID_POINTS {
            let y = lo + (hi - lo) * j as f64 / n;
            for k in 0..GRID_POINTS {
                let t = k as f64 / n;
                consider(x, y, t);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let x = lo + (hi - lo) * rng.gen::<f64>();
        let y = lo + (hi - lo) * rng.gen::<f64>();
        let t = rng.gen::<f64>();
        consider(x, y, t);
    }

    let (max_violation, witness, lhs_at_max) = match best {
        Some((v, w, lhs)) => (v, w, lhs),
        None => {
            return Ok(CertificationResult {
                status: CertStatus::Inconclusive,
                samples,
                skipped,
                max_violation: f64::NEG_INFINITY,
                witness: None,
                seed,
                convention_dependent: cls.convention_dependent(),
            })
        }
    };

    let failed = max_violation > SLACK_TOL * (1.0 + lhs_at_max.abs());
    let skip_fraction = skipped as f64 / (samples + skipped) as f64;
    let status = if failed {
        CertStatus::Fail
    } else if skip_fraction > MAX_SKIP_FRACTION {
        CertStatus::Inconclusive
    } else {
        CertStatus::Pass
    };

    Ok(CertificationResult {
        status,
        samples,
        skipped,
        max_violation,
        witness: if failed { Some(witness) } else { None },
        seed,
        convention_dependent: cls.convention_dependent(),
    })
}

/// x -> |f'(x)|^q, the integrand magnitude the theorem hypotheses constrain.
pub fn power_abs_derivative(f: &TestFunction, q: f64) -> Result<crate::fracint::Evaluator> {
    if !q.is_finite() || q < 1.0 {
        return Err(Error::domain(format!("power_abs_derivative: need q >= 1, got {q}")));
    }
    let fp = f.f_prime();
    Ok(std::sync::Arc::new(move |x| fp(x).abs().powf(q)))
}
