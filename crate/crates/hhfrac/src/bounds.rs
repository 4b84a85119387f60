//! Closed-form constants and the theorem bounds built from them.
//!
//! Conventions used throughout, for an interval [a, b] and order th:
//!   z  = 1 - a/b           in (0, 1)
//!   zp = (b - a)/(b + a)   in (0, 1), and its negative mirror
//! The lambda and mu constants are elementary; the C and K families are
//! 2F1/beta combinations. C1, C2, K1, K2 equal their defining integrals
//! exactly; C4 and C5 are certified upper bounds of theirs for th < 1
//! (via |u^th - v^th| <= |u - v|^th) and exact at th = 1.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fracint::{FractionalOrder, Interval};
use crate::specfun::{beta_fn, hyp2f1, Hyp2F1Args};

/// A named constant together with the special-function pieces it was
/// assembled from, for report transparency.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundConstants {
    pub name: String,
    pub value: f64,
    pub pieces: BTreeMap<String, f64>,
}

impl BoundConstants {
    fn new(name: &str, value: f64, pieces: Vec<(String, f64)>) -> Self {
        BoundConstants { name: name.into(), value, pieces: pieces.into_iter().collect() }
    }
}

/// Shared parameter bundle for the theorem bounds: order th > 0,
/// alpha in [0, 1], m in (0, 1], interval 0 < a < b, exponent q >= 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamSet {
    theta: FractionalOrder,
    alpha: f64,
    m: f64,
    iv: Interval,
    q: f64,
}

impl ParamSet {
    pub fn new(theta: FractionalOrder, alpha: f64, m: f64, iv: Interval, q: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(format!("param set: need alpha in [0, 1], got {alpha}")));
        }
        if !m.is_finite() || m <= 0.0 || m > 1.0 {
            return Err(Error::domain(format!("param set: need m in (0, 1], got {m}")));
        }
        if !q.is_finite() || q < 1.0 {
            return Err(Error::domain(format!("param set: need q >= 1, got {q}")));
        }
        Ok(ParamSet { theta, alpha, m, iv, q })
    }

    pub fn theta(&self) -> FractionalOrder {
        self.theta
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn interval(&self) -> &Interval {
        &self.iv
    }
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Holder conjugate p = q/(q-1); None at q = 1.
    pub fn p(&self) -> Option<f64> {
        if self.q > 1.0 {
            Some(self.q / (self.q - 1.0))
        } else {
            None
        }
    }

    fn p_required(&self, who: &str) -> Result<f64> {
        self.p()
            .ok_or_else(|| Error::domain(format!("{who}: needs q > 1, got q = {}", self.q)))
    }

    fn theta_at_most_one(&self, who: &str) -> Result<f64> {
        let th = self.theta.get();
        if th > 1.0 {
            return Err(Error::domain(format!("{who}: needs theta <= 1, got {th}")));
        }
        Ok(th)
    }
}

fn f21(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    hyp2f1(&Hyp2F1Args::new(a, b, c, z)?)
}

fn check_magnitude(name: &str, v: f64) -> Result<f64> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::domain(format!("{name}: derivative magnitude must be finite and >= 0, got {v}")));
    }
    Ok(v)
}

/// lambda1..3: the |1-2t| moment integrals against (tb+(1-t)a)^-2 in closed
/// form. lambda3 = lambda1 - lambda2 holds identically.
pub fn lambda_consts(iv: &Interval) -> Result<(f64, f64, f64)> {
    let (a, b) = (iv.a(), iv.b());
    let w = b - a;
    let l = ((a + b) * (a + b) / (4.0 * a * b)).ln();
    let l1 = 1.0 / (a * b) - 2.0 * l / (w * w);
    let l2 = -1.0 / (b * w) + (3.0 * a + b) * l / (w * w * w);
    let l3 = 1.0 / (a * w) - (3.0 * b + a) * l / (w * w * w);
    Ok((l1, l2, l3))
}

/// mu1 = int_0^1 t (tb+(1-t)a)^-2q dt and mu2 its (1-t) companion, in
/// closed form. Requires q > 1 (at q = 1/2 or 1 the form degenerates).
pub fn mu_consts(iv: &Interval, q: f64) -> Result<(f64, f64)> {
    if !q.is_finite() || q <= 1.0 {
        return Err(Error::domain(format!("mu_consts: need q > 1, got {q}")));
    }
    let (a, b) = (iv.a(), iv.b());
    let w = b - a;
    let den = 2.0 * w * w * (1.0 - q) * (1.0 - 2.0 * q);
    let m1 = (a.powf(2.0 - 2.0 * q) + b.powf(1.0 - 2.0 * q) * (w * (1.0 - 2.0 * q) - a)) / den;
    let m2 = (b.powf(2.0 - 2.0 * q) - a.powf(1.0 - 2.0 * q) * (w * (1.0 - 2.0 * q) + b)) / den;
    Ok((m1, m2))
}

/// C1 = int_0^1 (u^th + (1-u)^th) (ua+(1-u)b)^-2 du via 2F1.
pub fn c1(theta: FractionalOrder, iv: &Interval) -> Result<BoundConstants> {
    let th = theta.get();
    let (a, b) = (iv.a(), iv.b());
    let z = 1.0 - a / b;
    let f_a = f21(2.0, th + 1.0, th + 2.0, z)?;
    let f_b = f21(2.0, 1.0, th + 2.0, z)?;
    let value = (f_a + f_b) / (b * b * (th + 1.0));
    Ok(BoundConstants::new(
        "C1",
        value,
        vec![
            ("2F1(2,th+1;th+2;1-a/b)".into(), f_a),
            ("2F1(2,1;th+2;1-a/b)".into(), f_b),
        ],
    ))
}

/// C2 = int_0^1 (u^th + (1-u)^th)(1-u)^alpha (ua+(1-u)b)^-2 du via 2F1/beta.
pub fn c2(theta: FractionalOrder, alpha: f64, iv: &Interval) -> Result<BoundConstants> {
    if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!("c2: need alpha in [0, 1], got {alpha}")));
    }
    let th = theta.get();
    let (a, b) = (iv.a(), iv.b());
    let z = 1.0 - a / b;
    let beta = beta_fn(th + 1.0, alpha + 1.0)?;
    let f_a = f21(2.0, th + 1.0, th + alpha + 2.0, z)?;
    let f_b = f21(2.0, 1.0, th + alpha + 2.0, z)?;
    let value = beta / (b * b) * f_a + f_b / (b * b * (th + alpha + 1.0));
    Ok(BoundConstants::new(
        "C2",
        value,
        vec![
            ("beta(th+1,alpha+1)".into(), beta),
            ("2F1(2,th+1;th+alpha+2;1-a/b)".into(), f_a),
            ("2F1(2,1;th+alpha+2;1-a/b)".into(), f_b),
        ],
    ))
}

/// C3 = C1 - C2.
pub fn c3(theta: FractionalOrder, alpha: f64, iv: &Interval) -> Result<BoundConstants> {
    let one = c1(theta, iv)?;
    let two = c2(theta, alpha, iv)?;
    let mut pieces: Vec<(String, f64)> = Vec::new();
    pieces.push(("C1".into(), one.value));
    pieces.push(("C2".into(), two.value));
    Ok(BoundConstants::new("C3", one.value - two.value, pieces))
}

/// C4 bounds int_0^1 |(1-t)^th - t^th| (tb+(1-t)a)^-2 dt from above for
/// 0 < th <= 1 (exact at th = 1).
pub fn c4(theta: FractionalOrder, iv: &Interval) -> Result<BoundConstants> {
    let th = theta.get();
    if th > 1.0 {
        return Err(Error::domain(format!("c4: needs theta <= 1, got {th}")));
    }
    let (a, b) = (iv.a(), iv.b());
    let z = 1.0 - a / b;
    let zp = (b - a) / (b + a);
    let f_1 = f21(2.0, 1.0, th + 2.0, z)?;
    let f_th = f21(2.0, th + 1.0, th + 2.0, z)?;
    let f_mid = f21(2.0, th + 1.0, th + 2.0, zp)?;
    let half_ab = (a + b) / 2.0;
    let value = (f_1 - f_th) / (b * b * (th + 1.0)) + f_mid / (half_ab * half_ab * (th + 1.0));
    Ok(BoundConstants::new(
        "C4",
        value,
        vec![
            ("2F1(2,1;th+2;1-a/b)".into(), f_1),
            ("2F1(2,th+1;th+2;1-a/b)".into(), f_th),
            ("2F1(2,th+1;th+2;(b-a)/(b+a))".into(), f_mid),
        ],
    ))
}

/// C5 bounds int_0^1 |(1-t)^th - t^th| t^alpha (tb+(1-t)a)^-2 dt from above
/// for 0 < th <= 1 (exact at th = 1). C5 at alpha = 0 equals C4.
pub fn c5(theta: FractionalOrder, alpha: f64, iv: &Interval) -> Result<BoundConstants> {
    if !alpha.is_finite() || !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!("c5: need alpha in [0, 1], got {alpha}")));
    }
    let th = theta.get();
    if th > 1.0 {
        return Err(Error::domain(format!("c5: needs theta <= 1, got {th}")));
    }
    let (a, b) = (iv.a(), iv.b());
    let z = 1.0 - a / b;
    let zp = (b - a) / (b + a);
    let beta = beta_fn(th + 1.0, alpha + 1.0)?;
    let f_1 = f21(2.0, 1.0, th + alpha + 2.0, z)?;
    let f_th = f21(2.0, th + 1.0, th + alpha + 2.0, z)?;
    let f_mid = f21(2.0, th + 1.0, th + alpha + 2.0, zp)?;
    let value = f_1 / (b * b * (th + alpha + 1.0)) - beta / (b * b) * f_th
        + beta / ((a + b) * (a + b) * 2f64.powf(alpha - 2.0)) * f_mid;
    Ok(BoundConstants::new(
        "C5",
        value,
        vec![
            ("beta(th+1,alpha+1)".into(), beta),
            ("2F1(2,1;th+alpha+2;1-a/b)".into(), f_1),
            ("2F1(2,th+1;th+alpha+2;1-a/b)".into(), f_th),
            ("2F1(2,th+1;th+alpha+2;(b-a)/(b+a))".into(), f_mid),
        ],
    ))
}

/// C6 = C4 - C5.
pub fn c6(theta: FractionalOrder, alpha: f64, iv: &Interval) -> Result<BoundConstants> {
    let four = c4(theta, iv)?;
    let five = c5(theta, alpha, iv)?;
    let pieces = vec![("C4".into(), four.value), ("C5".into(), five.value)];
    Ok(BoundConstants::new("C6", four.value - five.value, pieces))
}

/// K1 = int_0^1 u^(th p) (ua+(1-u)b)^-2p du and K2 its (1-u)^(th p)
/// companion, via 2F1. Requires the Holder exponent p > 1.
pub fn k_consts(theta: FractionalOrder, p: f64, iv: &Interval) -> Result<(BoundConstants, BoundConstants)> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::domain(format!("k_consts: need p > 1, got {p}")));
    }
    let th = theta.get();
    let (a, b) = (iv.a(), iv.b());
    let z = 1.0 - a / b;
    let tp = th * p;
    let scale = b.powf(-2.0 * p) / (tp + 1.0);
    let f_1 = f21(2.0 * p, tp + 1.0, tp + 2.0, z)?;
    let f_2 = f21(2.0 * p, 1.0, tp + 2.0, z)?;
    let k1 = BoundConstants::new(
        "K1",
        scale * f_1,
        vec![("2F1(2p,th p+1;th p+2;1-a/b)".into(), f_1)],
    );
    let k2 = BoundConstants::new(
        "K2",
        scale * f_2,
        vec![("2F1(2p,1;th p+2;1-a/b)".into(), f_2)],
    );
    Ok((k1, k2))
}

/// A bound value plus the constants that went into it.
#[derive(Clone, Debug)]
pub struct BoundValue {
    pub value: f64,
    pub constants: Vec<BoundConstants>,
}

impl BoundValue {
    /// Flattens constants and their pieces into one map for reports.
    pub fn pieces(&self) -> BTreeMap<String, f64> {
        let mut map = BTreeMap::new();
        for c in &self.constants {
            map.insert(c.name.clone(), c.value);
            for (k, v) in &c.pieces {
                map.insert(format!("{}.{}", c.name, k), *v);
            }
        }
        map
    }
}

/// ab(b-a)/2 * lambda1^(1-1/q) * (lambda2 |f'(a)|^q + lambda3 |f'(b)|^q)^(1/q),
/// for q >= 1 and |f'|^q harmonically convex.
pub fn bound_thm2(iv: &Interval, q: f64, fa: f64, fb: f64) -> Result<f64> {
    if !q.is_finite() || q < 1.0 {
        return Err(Error::domain(format!("bound_thm2: need q >= 1, got {q}")));
    }
    let fa = check_magnitude("bound_thm2", fa)?;
    let fb = check_magnitude("bound_thm2", fb)?;
    let (a, b) = (iv.a(), iv.b());
    let (l1, l2, l3) = lambda_consts(iv)?;
    Ok(a * b * (b - a) / 2.0
        * l1.powf(1.0 - 1.0 / q)
        * (l2 * fa.powf(q) + l3 * fb.powf(q)).powf(1.0 / q))
}

/// ab(b-a)/2 * (1/(p+1))^(1/p) * (mu1 |f'(a)|^q + mu2 |f'(b)|^q)^(1/q),
/// for q > 1 and |f'|^q harmonically convex.
pub fn bound_thm3(iv: &Interval, q: f64, fa: f64, fb: f64) -> Result<f64> {
    if !q.is_finite() || q <= 1.0 {
        return Err(Error::domain(format!("bound_thm3: need q > 1, got {q}")));
    }
    let fa = check_magnitude("bound_thm3", fa)?;
    let fb = check_magnitude("bound_thm3", fb)?;
    let (a, b) = (iv.a(), iv.b());
    let p = q / (q - 1.0);
    let (m1, m2) = mu_consts(iv, q)?;
    Ok(a * b * (b - a) / 2.0
        * (1.0 / (p + 1.0)).powf(1.0 / p)
        * (m1 * fa.powf(q) + m2 * fb.powf(q)).powf(1.0 / q))
}

/// Power-mean bound: ab(b-a)/2 * C1^(1-1/q) * (C2 fa^q + m C3 fbm^q)^(1/q).
/// fa = |f'(a)|, fbm = |f'(b/m)|; q >= 1, any theta > 0.
pub fn bound_thm5(ps: &ParamSet, fa: f64, fbm: f64) -> Result<BoundValue> {
    let fa = check_magnitude("bound_thm5", fa)?;
    let fbm = check_magnitude("bound_thm5", fbm)?;
    let (a, b) = (ps.iv.a(), ps.iv.b());
    let q = ps.q;
    let one = c1(ps.theta, &ps.iv)?;
    let two = c2(ps.theta, ps.alpha, &ps.iv)?;
    let three = BoundConstants::new(
        "C3",
        one.value - two.value,
        vec![("C1".into(), one.value), ("C2".into(), two.value)],
    );
    let value = a * b * (b - a) / 2.0
        * one.value.powf(1.0 - 1.0 / q)
        * (two.value * fa.powf(q) + ps.m * three.value * fbm.powf(q)).powf(1.0 / q);
    Ok(BoundValue { value, constants: vec![one, two, three] })
}

/// Lemma-1 variant of the power-mean bound, 0 < theta <= 1:
/// ab(b-a)/2 * C4^(1-1/q) * (C5 fa^q + m C6 fbm^q)^(1/q).
pub fn bound_thm6(ps: &ParamSet, fa: f64, fbm: f64) -> Result<BoundValue> {
    let fa = check_magnitude("bound_thm6", fa)?;
    let fbm = check_magnitude("bound_thm6", fbm)?;
    ps.theta_at_most_one("bound_thm6")?;
    let (a, b) = (ps.iv.a(), ps.iv.b());
    let q = ps.q;
    let four = c4(ps.theta, &ps.iv)?;
    let five = c5(ps.theta, ps.alpha, &ps.iv)?;
    let six = BoundConstants::new(
        "C6",
        four.value - five.value,
        vec![("C4".into(), four.value), ("C5".into(), five.value)],
    );
    let value = a * b * (b - a) / 2.0
        * four.value.powf(1.0 - 1.0 / q)
        * (five.value * fa.powf(q) + ps.m * six.value * fbm.powf(q)).powf(1.0 / q);
    Ok(BoundValue { value, constants: vec![four, five, six] })
}

/// Holder bound, q > 1, any theta > 0:
/// a(b-a)/(2b) * (1/(th p+1))^(1/p) * ((fa^q + m alpha fbm^q)/(alpha+1))^(1/q)
///   * (F1^(1/p) + F2^(1/p)),
/// with F1, F2 the K1/K2 hypergeometric factors.
pub fn bound_thm7(ps: &ParamSet, fa: f64, fbm: f64) -> Result<BoundValue> {
    let fa = check_magnitude("bound_thm7", fa)?;
    let fbm = check_magnitude("bound_thm7", fbm)?;
    let p = ps.p_required("bound_thm7")?;
    let (a, b) = (ps.iv.a(), ps.iv.b());
    let (q, th) = (ps.q, ps.theta.get());
    let z = 1.0 - a / b;
    let tp = th * p;
    let f_1 = f21(2.0 * p, tp + 1.0, tp + 2.0, z)?;
    let f_2 = f21(2.0 * p, 1.0, tp + 2.0, z)?;
    let bracket = BoundConstants::new(
        "thm7",
        f_1.powf(1.0 / p) + f_2.powf(1.0 / p),
        vec![
            ("2F1(2p,th p+1;th p+2;1-a/b)".into(), f_1),
            ("2F1(2p,1;th p+2;1-a/b)".into(), f_2),
        ],
    );
    let value = a * (b - a) / (2.0 * b)
        * (1.0 / (tp + 1.0)).powf(1.0 / p)
        * ((fa.powf(q) + ps.m * ps.alpha * fbm.powf(q)) / (ps.alpha + 1.0)).powf(1.0 / q)
        * bracket.value;
    Ok(BoundValue { value, constants: vec![bracket] })
}

/// Improved-Holder bound, q > 1 and 0 < theta <= 1:
/// a(b-a)/(2b) * (1/(th p+1))^(1/p) * (1/(alpha+1))^(1/q)
///   * (Fa fa^q + m ((alpha+1) F2 - Fa) fbm^q)^(1/q),
/// Fa = 2F1(2q,1;alpha+2;z), F2 = 2F1(2q,1;2;z).
pub fn bound_thm8(ps: &ParamSet, fa: f64, fbm: f64) -> Result<BoundValue> {
    let fa = check_magnitude("bound_thm8", fa)?;
    let fbm = check_magnitude("bound_thm8", fbm)?;
    let p = ps.p_required("bound_thm8")?;
    let th = ps.theta_at_most_one("bound_thm8")?;
    let (a, b) = (ps.iv.a(), ps.iv.b());
    let q = ps.q;
    let z = 1.0 - a / b;
    let f_alpha = f21(2.0 * q, 1.0, ps.alpha + 2.0, z)?;
    let f_two = f21(2.0 * q, 1.0, 2.0, z)?;
    let bracket = BoundConstants::new(
        "thm8",
        f_alpha,
        vec![
            ("2F1(2q,1;alpha+2;1-a/b)".into(), f_alpha),
            ("2F1(2q,1;2;1-a/b)".into(), f_two),
        ],
    );
    let value = a * (b - a) / (2.0 * b)
        * (1.0 / (th * p + 1.0)).powf(1.0 / p)
        * (1.0 / (ps.alpha + 1.0)).powf(1.0 / q)
        * (f_alpha * fa.powf(q) + ps.m * ((ps.alpha + 1.0) * f_two - f_alpha) * fbm.powf(q))
            .powf(1.0 / q);
    Ok(BoundValue { value, constants: vec![bracket] })
}

/// Midpoint-split Holder bound, q > 1 and 0 < theta <= 1:
/// ab(b-a) 2^(1-1/p) / (a+b)^2 * (1/(th p+1))^(1/p)
///   * ((fa^q + m alpha fbm^q)/(alpha+1))^(1/q)
///   * (F(zp) + F(-zp))^(1/p), F(.) = 2F1(2p, th p+1; th p+2; .).
pub fn bound_thm9(ps: &ParamSet, fa: f64, fbm: f64) -> Result<BoundValue> {
    let fa = check_magnitude("bound_thm9", fa)?;
    let fbm = check_magnitude("bound_thm9", fbm)?;
    let p = ps.p_required("bound_thm9")?;
    let th = ps.theta_at_most_one("bound_thm9")?;
    let (a, b) = (ps.iv.a(), ps.iv.b());
    let q = ps.q;
    let zp = (b - a) / (b + a);
    let tp = th * p;
    let f_plus = f21(2.0 * p, tp + 1.0, tp + 2.0, zp)?;
    let f_minus = f21(2.0 * p, tp + 1.0, tp + 2.0, -zp)?;
    let bracket = BoundConstants::new(
        "thm9",
        f_plus + f_minus,
        vec![
            ("2F1(2p,th p+1;th p+2;(b-a)/(b+a))".into(), f_plus),
            ("2F1(2p,th p+1;th p+2;(a-b)/(b+a))".into(), f_minus),
        ],
    );
    let value = a * b * (b - a) * 2f64.powf(1.0 - 1.0 / p) / ((a + b) * (a + b))
        * (1.0 / (tp + 1.0)).powf(1.0 / p)
        * ((fa.powf(q) + ps.m * ps.alpha * fbm.powf(q)) / (ps.alpha + 1.0)).powf(1.0 / q)
        * (f_plus + f_minus).powf(1.0 / p);
    Ok(BoundValue { value, constants: vec![bracket] })
}
