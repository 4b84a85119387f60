//! End-to-end verification: a built-in function corpus, per-point records
//! and parameter-grid sweeps.
//!
//! A point is verified in stages. The left-hand side |I_f| is computed by
//! two independent routes (fractional integrals and the weighted-integral
//! identity) and the record is flagged quadrature-inconsistent when they
//! disagree. Certification of |f'|^q then gates the inequality claim:
//! a bound is only asserted where the hypothesis holds, everything else is
//! skipped-uncertified. An apparent violation is re-run at 10x tighter
//! quadrature tolerance before it is reported, so the violated status
//! separates genuine counterexamples from numerical noise.

pub mod report;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bounds::{self, ParamSet};
use crate::convexity::{
    certify, power_abs_derivative, CertStatus, CertificationResult, ConvexityClass,
    DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::fracint::{hh_sandwich, i_f, lemma_rhs, FractionalOrder, Interval, TestFunction};
use crate::quad::QuadratureSpec;

/// Absolute agreement required between the two lhs routes.
pub const LEMMA_GATE: f64 = 1e-7;

/// A bound may undershoot the lhs by this relative slack before the record
/// counts as violated: slack >= -SLACK_TOL * (1 + bound).
pub const SLACK_TOL: f64 = 1e-7;

/// Absolute slack tolerance for the two-sided sandwich ordering.
pub const SANDWICH_TOL: f64 = 1e-9;

/// Seed used by sweeps and the CLI unless overridden.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Two-sided sandwich on the fractional mean of f itself.
    Thm4,
    /// Power-mean bound with C1..C3, q >= 1, any theta.
    Thm5,
    /// Power-mean bound with C4..C6, q >= 1, theta <= 1.
    Thm6,
    /// Holder bound, q > 1, any theta.
    Thm7,
    /// Improved Holder bound, q > 1, theta <= 1.
    Thm8,
    /// Midpoint-split Holder bound, q > 1, theta <= 1.
    Thm9,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Thm4,
        TheoremId::Thm5,
        TheoremId::Thm6,
        TheoremId::Thm7,
        TheoremId::Thm8,
        TheoremId::Thm9,
    ];

    fn needs_q_above_one(self) -> bool {
        matches!(self, TheoremId::Thm7 | TheoremId::Thm8 | TheoremId::Thm9)
    }

    fn needs_theta_at_most_one(self) -> bool {
        matches!(self, TheoremId::Thm6 | TheoremId::Thm8 | TheoremId::Thm9)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::Thm4 => "thm4",
            TheoremId::Thm5 => "thm5",
            TheoremId::Thm6 => "thm6",
            TheoremId::Thm7 => "thm7",
            TheoremId::Thm8 => "thm8",
            TheoremId::Thm9 => "thm9",
        };
        out.write_str(s)
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "thm4" => Ok(TheoremId::Thm4),
            "thm5" => Ok(TheoremId::Thm5),
            "thm6" => Ok(TheoremId::Thm6),
            "thm7" => Ok(TheoremId::Thm7),
            "thm8" => Ok(TheoremId::Thm8),
            "thm9" => Ok(TheoremId::Thm9),
            _ => Err(Error::Config(format!(
                "unknown theorem {s}; expected one of thm4..thm9"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordStatus {
    /// Certification passed and the bound holds within tolerance.
    Verified,
    /// Certification passed but the bound fails even at tightened quadrature.
    Violated,
    /// The hypothesis on |f'|^q could not be certified; no claim is made.
    SkippedUncertified,
    /// The point is outside the function's domain or the interval collapses.
    Degenerate,
    /// The theorem's preconditions exclude this parameter point.
    Rejected,
    /// The two lhs routes disagree or quadrature failed; result untrusted.
    QuadratureInconsistent,
}

impl fmt::Display for RecordStatus {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RecordStatus::Verified => "verified",
            RecordStatus::Violated => "violated",
            RecordStatus::SkippedUncertified => "skipped-uncertified",
            RecordStatus::Degenerate => "degenerate",
            RecordStatus::Rejected => "rejected",
            RecordStatus::QuadratureInconsistent => "quadrature-inconsistent",
        };
        out.write_str(s)
    }
}

impl FromStr for RecordStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verified" => Ok(RecordStatus::Verified),
            "violated" => Ok(RecordStatus::Violated),
            "skipped-uncertified" => Ok(RecordStatus::SkippedUncertified),
            "degenerate" => Ok(RecordStatus::Degenerate),
            "rejected" => Ok(RecordStatus::Rejected),
            "quadrature-inconsistent" => Ok(RecordStatus::QuadratureInconsistent),
            _ => Err(Error::Config(format!("unknown record status {s}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

/// Certification outcome carried inside a record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertSummary {
    pub class: String,
    pub status: String,
    pub samples: u64,
    pub skipped: u64,
    pub max_violation: f64,
    pub witness: Option<WitnessPoint>,
    pub seed: u64,
    pub convention_dependent: bool,
}

impl CertSummary {
    pub fn of(cls: &ConvexityClass, r: &CertificationResult) -> Self {
        CertSummary {
            class: cls.to_string(),
            status: match r.status {
                CertStatus::Pass => "pass",
                CertStatus::Fail => "fail",
                CertStatus::Inconclusive => "inconclusive",
            }
            .into(),
            samples: r.samples,
            skipped: r.skipped,
            max_violation: r.max_violation,
            witness: r.witness.map(|w| WitnessPoint { x: w.x, y: w.y, t: w.t }),
            seed: r.seed,
            convention_dependent: r.convention_dependent,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// One verified parameter point. lhs, bound and slack stay empty when the
/// stage that would produce them was never reached.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub theorem: TheoremId,
    pub function: String,
    pub theta: f64,
    pub alpha: f64,
    pub m: f64,
    pub a: f64,
    pub b: f64,
    pub q: f64,
    pub lhs: Option<f64>,
    pub bound: Option<f64>,
    pub slack: Option<f64>,
    pub status: RecordStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lemma_gap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panels: Option<u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cert: Option<CertSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationRecord {
    fn base(id: TheoremId, f: &TestFunction, ps: &ParamSet) -> Self {
        let iv = ps.interval();
        VerificationRecord {
            theorem: id,
            function: f.name().into(),
            theta: ps.theta().get(),
            alpha: ps.alpha(),
            m: ps.m(),
            a: iv.a(),
            b: iv.b(),
            q: ps.q(),
            lhs: None,
            bound: None,
            slack: None,
            status: RecordStatus::Rejected,
            lemma_gap: None,
            quad_error: None,
            panels: None,
            constants: BTreeMap::new(),
            cert: None,
            note: None,
        }
    }

    /// The record restricted to what the CSV format carries.
    pub fn csv_projection(&self) -> Self {
        VerificationRecord {
            lemma_gap: None,
            quad_error: None,
            panels: None,
            constants: BTreeMap::new(),
            cert: None,
            note: None,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HarnessOptions {
    pub quad: QuadratureSpec,
    pub budget: u32,
    pub seed: u64,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            quad: QuadratureSpec::default(),
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
        }
    }
}

/// Built-in test functions, all on [0.05, 16] so every default grid point
/// keeps [a, b/m] inside the domain. The claimed class labels are
/// informational; sweeps trust certification, not labels.
pub fn corpus() -> Vec<TestFunction> {
    let dom = Interval::new(0.05, 16.0).expect("corpus domain");
    let harmonic = vec!["harmonically-convex".to_string()];
    let mk = |name: &str, f, fp, classes: Vec<String>| {
        TestFunction::new(name, f, fp, dom, classes).expect("corpus member")
    };
    vec![
        mk("half-square", Arc::new(|x| 0.5 * x * x), Arc::new(|x: f64| x), harmonic.clone()),
        mk("identity", Arc::new(|x: f64| x), Arc::new(|_| 1.0), harmonic.clone()),
        mk("neg-log", Arc::new(|x: f64| -x.ln()), Arc::new(|x: f64| -1.0 / x), Vec::new()),
        mk("cubic-third", Arc::new(|x| x * x * x / 3.0), Arc::new(|x| x * x), harmonic.clone()),
        mk("const-one", Arc::new(|_| 1.0), Arc::new(|_| 0.0), harmonic),
    ]
}

pub fn corpus_function(name: &str) -> Result<TestFunction> {
    corpus().into_iter().find(|f| f.name() == name).ok_or_else(|| {
        let names: Vec<String> = corpus().iter().map(|f| f.name().to_string()).collect();
        Error::Config(format!("unknown function {name}; corpus has: {}", names.join(", ")))
    })
}

#[derive(Clone)]
enum LhsOutcome {
    Ready { lhs: f64, gap: f64, err: f64, panels: u32 },
    Failed(String),
}

type LhsKey = (String, u64, u64, u64);
type CertKey = (String, u64, u64, u64, u64, u64);

#[derive(Default)]
struct Caches {
    lhs: HashMap<LhsKey, LhsOutcome>,
    cert: HashMap<CertKey, CertificationResult>,
    harmonic: HashMap<(String, u64, u64), CertificationResult>,
}

fn compute_lhs(
    f: &TestFunction,
    theta: FractionalOrder,
    iv: &Interval,
    quad: &QuadratureSpec,
) -> LhsOutcome {
    let direct = match i_f(theta, iv, f, quad) {
        Ok(v) => v,
        Err(e) => return LhsOutcome::Failed(format!("lhs quadrature: {e}")),
    };
    let identity = match lemma_rhs(theta, iv, f, quad) {
        Ok(v) => v,
        Err(e) => return LhsOutcome::Failed(format!("lhs cross-check quadrature: {e}")),
    };
    LhsOutcome::Ready {
        lhs: direct.value.abs(),
        gap: (direct.value - identity.value).abs(),
        err: direct.abs_error,
        panels: direct.panels.saturating_add(identity.panels),
    }
}

fn lhs_for(
    caches: &mut Caches,
    f: &TestFunction,
    theta: FractionalOrder,
    iv: &Interval,
    quad: &QuadratureSpec,
) -> LhsOutcome {
    let key = (f.name().to_string(), theta.get().to_bits(), iv.a().to_bits(), iv.b().to_bits());
    caches
        .lhs
        .entry(key)
        .or_insert_with(|| compute_lhs(f, theta, iv, quad))
        .clone()
}

fn cert_for(
    caches: &mut Caches,
    f: &TestFunction,
    q: f64,
    cls: &ConvexityClass,
    alpha: f64,
    m: f64,
    region: &Interval,
    opts: &HarnessOptions,
) -> Result<CertificationResult> {
    let key = (
        f.name().to_string(),
        q.to_bits(),
        alpha.to_bits(),
        m.to_bits(),
        region.a().to_bits(),
        region.b().to_bits(),
    );
    if let Some(hit) = caches.cert.get(&key) {
        return Ok(hit.clone());
    }
    let target = power_abs_derivative(f, q)?;
    let res = certify(|x| target(x), f.domain(), cls, region, opts.budget, opts.seed)?;
    caches.cert.insert(key, res.clone());
    Ok(res)
}

fn harmonic_cert_for(
    caches: &mut Caches,
    f: &TestFunction,
    iv: &Interval,
    opts: &HarnessOptions,
) -> Result<CertificationResult> {
    let key = (f.name().to_string(), iv.a().to_bits(), iv.b().to_bits());
    if let Some(hit) = caches.harmonic.get(&key) {
        return Ok(hit.clone());
    }
    let res = certify(
        |x| f.eval(x),
        f.domain(),
        &ConvexityClass::HarmonicallyConvex,
        iv,
        opts.budget,
        opts.seed,
    )?;
    caches.harmonic.insert(key, res.clone());
    Ok(res)
}

fn sandwich_point(
    ps: &ParamSet,
    f: &TestFunction,
    opts: &HarnessOptions,
    caches: &mut Caches,
) -> VerificationRecord {
    let mut rec = VerificationRecord::base(TheoremId::Thm4, f, ps);
    let iv = *ps.interval();
    if !f.domain().contains_interval(&iv) {
        rec.status = RecordStatus::Degenerate;
        rec.note = Some(format!(
            "[{}, {}] leaves the domain of {} [{}, {}]",
            iv.a(),
            iv.b(),
            f.name(),
            f.domain().a(),
            f.domain().b()
        ));
        return rec;
    }
    let cert = match harmonic_cert_for(caches, f, &iv, opts) {
        Ok(c) => c,
        Err(e) => {
            rec.note = Some(e.to_string());
            return rec;
        }
    };
    rec.cert = Some(CertSummary::of(&ConvexityClass::HarmonicallyConvex, &cert));

    let fill = |rec: &mut VerificationRecord, quad: &QuadratureSpec| -> Result<f64> {
        let sw = hh_sandwich(ps.theta(), &iv, f, quad)?;
        let slack = (sw.mid - sw.left).min(sw.right - sw.mid);
        rec.lhs = Some(sw.mid);
        rec.bound = Some(sw.right);
        rec.slack = Some(slack);
        rec.quad_error = Some(sw.abs_error);
        rec.panels = Some(sw.panels);
        rec.constants = [
            ("sandwich.left".to_string(), sw.left),
            ("sandwich.mid".to_string(), sw.mid),
            ("sandwich.right".to_string(), sw.right),
        ]
        .into_iter()
        .collect();
        Ok(slack)
    };

    let slack = match fill(&mut rec, &opts.quad) {
        Ok(s) => s,
        Err(e) => {
            rec.status = RecordStatus::QuadratureInconsistent;
            rec.note = Some(e.to_string());
            return rec;
        }
    };
    if rec.cert.as_ref().is_some_and(|c| !c.passed()) {
        rec.status = RecordStatus::SkippedUncertified;
        return rec;
    }
    if slack >= -SANDWICH_TOL {
        rec.status = RecordStatus::Verified;
        return rec;
    }
    match fill(&mut rec, &opts.quad.tightened(10.0)) {
        Ok(tight_slack) => {
            rec.note = Some("re-evaluated at 10x tighter quadrature".into());
            rec.status = if tight_slack >= -SANDWICH_TOL {
                RecordStatus::Verified
            } else {
                RecordStatus::Violated
            };
        }
        Err(e) => {
            rec.status = RecordStatus::QuadratureInconsistent;
            rec.note = Some(e.to_string());
        }
    }
    rec
}

fn verify_point(
    id: TheoremId,
    ps: &ParamSet,
    f: &TestFunction,
    opts: &HarnessOptions,
    caches: &mut Caches,
) -> VerificationRecord {
    if id == TheoremId::Thm4 {
        return sandwich_point(ps, f, opts, caches);
    }
    let mut rec = VerificationRecord::base(id, f, ps);
    let iv = *ps.interval();

    if id.needs_q_above_one() && ps.p().is_none() {
        rec.note = Some(format!("{id} needs q > 1, got q = {}", ps.q()));
        return rec;
    }
    if id.needs_theta_at_most_one() && ps.theta().get() > 1.0 {
        rec.note = Some(format!("{id} needs theta <= 1, got theta = {}", ps.theta().get()));
        return rec;
    }

    let b_over_m = iv.b() / ps.m();
    let region = match Interval::new(iv.a(), b_over_m) {
        Ok(r) => r,
        Err(e) => {
            rec.status = RecordStatus::Degenerate;
            rec.note = Some(e.to_string());
            return rec;
        }
    };
    if !f.domain().contains_interval(&region) {
        rec.status = RecordStatus::Degenerate;
        rec.note = Some(format!(
            "certification region [{}, {}] leaves the domain of {} [{}, {}]",
            region.a(),
            region.b(),
            f.name(),
            f.domain().a(),
            f.domain().b()
        ));
        return rec;
    }

    let fa = f.eval_prime(iv.a()).abs();
    let fbm = f.eval_prime(b_over_m).abs();
    let bound = match id {
        TheoremId::Thm5 => bounds::bound_thm5(ps, fa, fbm),
        TheoremId::Thm6 => bounds::bound_thm6(ps, fa, fbm),
        TheoremId::Thm7 => bounds::bound_thm7(ps, fa, fbm),
        TheoremId::Thm8 => bounds::bound_thm8(ps, fa, fbm),
        TheoremId::Thm9 => bounds::bound_thm9(ps, fa, fbm),
        TheoremId::Thm4 => unreachable!("handled above"),
    };
    let bound = match bound {
        Ok(b) => b,
        Err(e) => {
            rec.note = Some(e.to_string());
            return rec;
        }
    };
    rec.bound = Some(bound.value);
    rec.constants = bound.pieces();

    match lhs_for(caches, f, ps.theta(), &iv, &opts.quad) {
        LhsOutcome::Failed(msg) => {
            rec.status = RecordStatus::QuadratureInconsistent;
            rec.note = Some(msg);
            return rec;
        }
        LhsOutcome::Ready { lhs, gap, err, panels } => {
            rec.lhs = Some(lhs);
            rec.slack = Some(bound.value - lhs);
            rec.lemma_gap = Some(gap);
            rec.quad_error = Some(err);
            rec.panels = Some(panels);
        }
    }

    let cls = match ConvexityClass::harmonically_alpha_m(ps.alpha(), ps.m()) {
        Ok(c) => c,
        Err(e) => {
            rec.note = Some(e.to_string());
            return rec;
        }
    };
    let cert = match cert_for(caches, f, ps.q(), &cls, ps.alpha(), ps.m(), &region, opts) {
        Ok(c) => c,
        Err(e) => {
            rec.note = Some(e.to_string());
            return rec;
        }
    };
    rec.cert = Some(CertSummary::of(&cls, &cert));

    if rec.lemma_gap.is_some_and(|g| g > LEMMA_GATE) {
        rec.status = RecordStatus::QuadratureInconsistent;
        rec.note = Some(format!(
            "lhs routes disagree by {:.3e}",
            rec.lemma_gap.unwrap_or(f64::NAN)
        ));
        return rec;
    }
    if cert.status != CertStatus::Pass {
        rec.status = RecordStatus::SkippedUncertified;
        return rec;
    }
    let tol = SLACK_TOL * (1.0 + bound.value.abs());
    if rec.slack.is_some_and(|s| s >= -tol) {
        rec.status = RecordStatus::Verified;
        return rec;
    }

    // Apparent violation: redo the lhs at 10x tighter tolerance to rule
    // out quadrature noise before reporting it.
    match compute_lhs(f, ps.theta(), &iv, &opts.quad.tightened(10.0)) {
        LhsOutcome::Ready { lhs, gap, err, panels } => {
            rec.lhs = Some(lhs);
            rec.slack = Some(bound.value - lhs);
            rec.lemma_gap = Some(gap);
            rec.quad_error = Some(err);
            rec.panels = Some(panels);
            rec.note = Some("re-evaluated at 10x tighter quadrature".into());
            rec.status = if gap > LEMMA_GATE {
                RecordStatus::QuadratureInconsistent
            } else if bound.value - lhs >= -tol {
                RecordStatus::Verified
            } else {
                RecordStatus::Violated
            };
        }
        LhsOutcome::Failed(msg) => {
            rec.status = RecordStatus::QuadratureInconsistent;
            rec.note = Some(msg);
        }
    }
    rec
}

/// Verifies one theorem at one parameter point. Precondition mismatches,
/// domain problems and quadrature trouble come back as record statuses,
/// never as panics.
pub fn verify_theorem(
    id: TheoremId,
    ps: &ParamSet,
    f: &TestFunction,
    opts: &HarnessOptions,
) -> VerificationRecord {
    let mut caches = Caches::default();
    verify_point(id, ps, f, opts, &mut caches)
}

/// Grid definition for [`run_sweep`]. Defaults cover every precondition
/// branch of the theorems in a few thousand points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub theta: Vec<f64>,
    pub alpha: Vec<f64>,
    pub m: Vec<f64>,
    pub q: Vec<f64>,
    pub intervals: Vec<[f64; 2]>,
    /// Corpus subset by name; None means the whole corpus.
    pub functions: Option<Vec<String>>,
    /// Theorem subset ("thm4".."thm9"); None means all.
    pub theorems: Option<Vec<String>>,
    pub seed: u64,
    pub budget: u32,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            theta: vec![0.25, 0.5, 0.75, 1.0],
            alpha: vec![0.25, 0.5, 0.75, 1.0],
            m: vec![0.5, 0.75, 1.0],
            q: vec![1.0, 1.5, 2.0, 3.0],
            intervals: vec![[1.0, 2.0], [1.0, 4.0], [0.5, 3.0]],
            functions: None,
            theorems: None,
            seed: DEFAULT_SEED,
            budget: DEFAULT_BUDGET,
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            csv: None,
            json: None,
        }
    }
}

impl SweepConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SweepConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("sweep config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let cfg_err = |e: Error| Error::Config(format!("sweep config: {e}"));
        for &t in &self.theta {
            FractionalOrder::new(t).map_err(cfg_err)?;
        }
        for &al in &self.alpha {
            if !al.is_finite() || !(0.0..=1.0).contains(&al) {
                return Err(Error::Config(format!("sweep config: alpha {al} outside [0, 1]")));
            }
        }
        for &m in &self.m {
            if !m.is_finite() || m <= 0.0 || m > 1.0 {
                return Err(Error::Config(format!("sweep config: m {m} outside (0, 1]")));
            }
        }
        for &q in &self.q {
            if !q.is_finite() || q < 1.0 {
                return Err(Error::Config(format!("sweep config: q {q} below 1")));
            }
        }
        for &[a, b] in &self.intervals {
            Interval::new(a, b).map_err(cfg_err)?;
        }
        if let Some(names) = &self.functions {
            for n in names {
                corpus_function(n)?;
            }
        }
        if let Some(ids) = &self.theorems {
            for t in ids {
                t.parse::<TheoremId>()?;
            }
        }
        Ok(())
    }

    pub fn options(&self) -> HarnessOptions {
        HarnessOptions {
            quad: QuadratureSpec {
                abs_tol: self.abs_tol,
                rel_tol: self.rel_tol,
                ..QuadratureSpec::default()
            },
            budget: self.budget,
            seed: self.seed,
        }
    }

    fn selected_functions(&self) -> Result<Vec<TestFunction>> {
        match &self.functions {
            None => Ok(corpus()),
            Some(names) => names.iter().map(|n| corpus_function(n)).collect(),
        }
    }

    fn selected_theorems(&self) -> Result<Vec<TheoremId>> {
        match &self.theorems {
            None => Ok(TheoremId::ALL.to_vec()),
            Some(names) => {
                let wanted: Vec<TheoremId> =
                    names.iter().map(|n| n.parse()).collect::<Result<_>>()?;
                Ok(TheoremId::ALL.iter().copied().filter(|t| wanted.contains(t)).collect())
            }
        }
    }
}

/// Runs the Cartesian product of the grids over the corpus and theorems.
/// Points a theorem can never accept (q = 1 for the Holder family,
/// theta > 1 where only theta <= 1 is proven) are filtered out rather than
/// emitted as rejected records; explicit [`verify_theorem`] calls still
/// report them. Record order is canonical: theorem, function, then grid
/// axes in declaration order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<VerificationRecord>> {
    cfg.validate()?;
    let functions = cfg.selected_functions()?;
    let theorems = cfg.selected_theorems()?;
    let opts = cfg.options();
    let mut caches = Caches::default();
    let mut records = Vec::new();
    for &id in &theorems {
        for f in &functions {
            if id == TheoremId::Thm4 {
                for &t in &cfg.theta {
                    for &[a, b] in &cfg.intervals {
                        let ps = ParamSet::new(
                            FractionalOrder::new(t)?,
                            1.0,
                            1.0,
                            Interval::new(a, b)?,
                            1.0,
                        )?;
                        records.push(verify_point(id, &ps, f, &opts, &mut caches));
                    }
                }
                continue;
            }
            for &t in &cfg.theta {
                if id.needs_theta_at_most_one() && t > 1.0 {
                    continue;
                }
                for &al in &cfg.alpha {
                    for &m in &cfg.m {
                        for &q in &cfg.q {
                            if id.needs_q_above_one() && q <= 1.0 {
                                continue;
                            }
                            for &[a, b] in &cfg.intervals {
                                let ps = ParamSet::new(
                                    FractionalOrder::new(t)?,
                                    al,
                                    m,
                                    Interval::new(a, b)?,
                                    q,
                                )?;
                                records.push(verify_point(id, &ps, f, &opts, &mut caches));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(records)
}

/// Status counts over a record list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SweepSummary {
    pub total: usize,
    pub verified: usize,
    pub violated: usize,
    pub skipped_uncertified: usize,
    pub degenerate: usize,
    pub rejected: usize,
    pub quadrature_inconsistent: usize,
}

impl SweepSummary {
    pub fn of(records: &[VerificationRecord]) -> Self {
        let mut s = SweepSummary { total: records.len(), ..SweepSummary::default() };
        for r in records {
            match r.status {
                RecordStatus::Verified => s.verified += 1,
                RecordStatus::Violated => s.violated += 1,
                RecordStatus::SkippedUncertified => s.skipped_uncertified += 1,
                RecordStatus::Degenerate => s.degenerate += 1,
                RecordStatus::Rejected => s.rejected += 1,
                RecordStatus::QuadratureInconsistent => s.quadrature_inconsistent += 1,
            }
        }
        s
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "total                   {}", self.total)?;
        writeln!(out, "verified                {}", self.verified)?;
        writeln!(out, "violated                {}", self.violated)?;
        writeln!(out, "skipped-uncertified     {}", self.skipped_uncertified)?;
        writeln!(out, "degenerate              {}", self.degenerate)?;
        writeln!(out, "rejected                {}", self.rejected)?;
        write!(out, "quadrature-inconsistent {}", self.quadrature_inconsistent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn opts() -> HarnessOptions {
        HarnessOptions::default()
    }

    fn ps(theta: f64, alpha: f64, m: f64, a: f64, b: f64, q: f64) -> ParamSet {
        ParamSet::new(
            FractionalOrder::new(theta).unwrap(),
            alpha,
            m,
            Interval::new(a, b).unwrap(),
            q,
        )
        .unwrap()
    }

    #[test]
    fn corpus_members_and_domains() {
        let fns = corpus();
        let names: Vec<&str> = fns.iter().map(|f| f.name()).collect();
        assert_eq!(names, ["half-square", "identity", "neg-log", "cubic-third", "const-one"]);
        // Widest default sweep region is [0.5, 3/0.5] = [0.5, 6].
        let widest = Interval::new(0.5, 6.0).unwrap();
        for f in &fns {
            assert!(f.domain().contains_interval(&widest));
        }
    }

    #[test]
    fn theorem_and_status_strings_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.to_string().parse::<TheoremId>().unwrap(), id);
        }
        for s in [
            RecordStatus::Verified,
            RecordStatus::Violated,
            RecordStatus::SkippedUncertified,
            RecordStatus::Degenerate,
            RecordStatus::Rejected,
            RecordStatus::QuadratureInconsistent,
        ] {
            assert_eq!(s.to_string().parse::<RecordStatus>().unwrap(), s);
        }
        assert!("thm12".parse::<TheoremId>().is_err());
    }

    #[test]
    fn constant_function_verifies_trivially() {
        let f = corpus_function("const-one").unwrap();
        let rec = verify_theorem(TheoremId::Thm5, &ps(0.5, 0.5, 0.5, 1.0, 2.0, 2.0), &f, &opts());
        assert_eq!(rec.status, RecordStatus::Verified);
        assert!(rec.lhs.unwrap().abs() < 1e-9);
        assert_eq!(rec.bound.unwrap(), 0.0);
    }

    #[test]
    fn half_square_thm5_reference_point() {
        // theta = alpha = m = q = 1 on [1, 2]: lhs = |I_f| of x^2/2 is 1/4.
        let f = corpus_function("half-square").unwrap();
        let rec = verify_theorem(TheoremId::Thm5, &ps(1.0, 1.0, 1.0, 1.0, 2.0, 1.0), &f, &opts());
        assert_eq!(rec.status, RecordStatus::Verified);
        assert_relative_eq!(rec.lhs.unwrap(), 0.25, max_relative = 1e-9);
        assert!(rec.slack.unwrap() > 0.0);
        assert!(rec.lemma_gap.unwrap() < 1e-8);
        assert!(rec.cert.unwrap().passed());
    }

    #[test]
    fn constant_derivative_fails_certification_for_small_m() {
        // |f'|^q of the identity is 1, which breaks t + m(1-t) >= 1 at m < 1.
        let f = corpus_function("identity").unwrap();
        let rec = verify_theorem(TheoremId::Thm5, &ps(1.0, 1.0, 0.5, 1.0, 2.0, 1.0), &f, &opts());
        assert_eq!(rec.status, RecordStatus::SkippedUncertified);
        let cert = rec.cert.unwrap();
        assert_eq!(cert.status, "fail");
        assert!(cert.witness.is_some());
        assert_relative_eq!(cert.max_violation, 0.5, max_relative = 1e-12);
        // Slack is still recorded for a skipped point.
        assert!(rec.slack.is_some());
    }

    #[test]
    fn preconditions_give_rejected_records() {
        let f = corpus_function("half-square").unwrap();
        let r7 = verify_theorem(TheoremId::Thm7, &ps(0.5, 1.0, 1.0, 1.0, 2.0, 1.0), &f, &opts());
        assert_eq!(r7.status, RecordStatus::Rejected);
        assert!(r7.lhs.is_none() && r7.bound.is_none());
        let r6 = verify_theorem(TheoremId::Thm6, &ps(1.5, 1.0, 1.0, 1.0, 2.0, 2.0), &f, &opts());
        assert_eq!(r6.status, RecordStatus::Rejected);
        assert!(r6.note.unwrap().contains("theta"));
    }

    #[test]
    fn out_of_domain_region_is_degenerate() {
        let dom = Interval::new(1.0, 3.0).unwrap();
        let f = TestFunction::new(
            "narrow",
            Arc::new(|x: f64| x),
            Arc::new(|_| 1.0),
            dom,
            Vec::new(),
        )
        .unwrap();
        // b/m = 2/0.5 = 4 falls outside [1, 3].
        let rec = verify_theorem(TheoremId::Thm5, &ps(1.0, 1.0, 0.5, 1.0, 2.0, 1.0), &f, &opts());
        assert_eq!(rec.status, RecordStatus::Degenerate);
        assert!(rec.bound.is_none());
    }

    #[test]
    fn sandwich_identity_reference() {
        // theta = 1 on [1, 2] for f(x) = x: left = 4/3, mid = 2 ln 2,
        // right = 3/2.
        let f = corpus_function("identity").unwrap();
        let rec = verify_theorem(TheoremId::Thm4, &ps(1.0, 1.0, 1.0, 1.0, 2.0, 1.0), &f, &opts());
        assert_eq!(rec.status, RecordStatus::Verified);
        assert_relative_eq!(rec.lhs.unwrap(), 2.0 * std::f64::consts::LN_2, max_relative = 1e-9);
        assert_relative_eq!(rec.bound.unwrap(), 1.5, max_relative = 1e-12);
        assert_relative_eq!(rec.constants["sandwich.left"], 4.0 / 3.0, max_relative = 1e-12);
        assert!(rec.slack.unwrap() > 0.0);
    }

    #[test]
    fn sandwich_skips_non_harmonically_convex_members() {
        let f = corpus_function("neg-log").unwrap();
        let rec = verify_theorem(TheoremId::Thm4, &ps(0.5, 1.0, 1.0, 1.0, 2.0, 1.0), &f, &opts());
        assert_eq!(rec.status, RecordStatus::SkippedUncertified);
        assert_eq!(rec.cert.unwrap().status, "fail");
    }

    #[test]
    fn small_sweep_has_no_violations_and_is_deterministic() {
        let cfg = SweepConfig {
            theta: vec![0.5],
            alpha: vec![1.0],
            m: vec![1.0],
            q: vec![2.0],
            intervals: vec![[1.0, 2.0]],
            ..SweepConfig::default()
        };
        let records = run_sweep(&cfg).unwrap();
        // 5 thm4 records + 5 functions x 5 theorems.
        assert_eq!(records.len(), 30);
        let summary = SweepSummary::of(&records);
        assert_eq!(summary.violated, 0);
        assert_eq!(summary.total, 30);
        assert!(summary.verified >= 20);
        let again = run_sweep(&cfg).unwrap();
        assert_eq!(records, again);
    }

    #[test]
    fn sweep_filters_inapplicable_points() {
        let cfg = SweepConfig {
            theorems: Some(vec!["thm7".into()]),
            q: vec![1.0],
            ..SweepConfig::default()
        };
        assert!(run_sweep(&cfg).unwrap().is_empty());
        let cfg = SweepConfig {
            theorems: Some(vec!["thm9".into()]),
            theta: vec![1.5],
            q: vec![2.0],
            functions: Some(vec!["const-one".into()]),
            ..SweepConfig::default()
        };
        assert!(run_sweep(&cfg).unwrap().is_empty());
    }

    #[test]
    fn empty_grid_gives_empty_records() {
        let cfg = SweepConfig { theta: Vec::new(), ..SweepConfig::default() };
        assert!(run_sweep(&cfg).unwrap().is_empty());
    }

    #[test]
    fn config_validation_and_parsing() {
        assert!(SweepConfig::from_toml_str("theta = [0.5]").is_ok());
        assert!(SweepConfig::from_toml_str("theta = [-1.0]").is_err());
        assert!(SweepConfig::from_toml_str("alpha = [2.0]").is_err());
        assert!(SweepConfig::from_toml_str("no_such_key = 1").is_err());
        assert!(SweepConfig::from_toml_str("functions = [\"nope\"]").is_err());
        assert!(SweepConfig::from_toml_str("theorems = [\"thm1\"]").is_err());
        let cfg = SweepConfig::default();
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(SweepConfig::from_toml_str(&text).unwrap(), cfg);
    }

    #[test]
    fn config_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.toml");
        std::fs::write(&path, "theta = [0.5]\nseed = 7\n").unwrap();
        let cfg = SweepConfig::from_path(&path).unwrap();
        assert_eq!(cfg.theta, vec![0.5]);
        assert_eq!(cfg.seed, 7);
        assert!(SweepConfig::from_path(&dir.path().join("missing.toml")).is_err());
    }
}
