//! Heinz/Heron and geometric/Heinz pair constructions.
//!
//! With x = e^{2c}, the ratio Heinz_s(1, x) / Heron_{α²}(1, x) equals
//! f_α(c) = cosh(αc) / (α² cosh c + 1 − α²) for α = 2s − 1, and
//! √x / Heinz_s(1, x) equals k_s(x) = sech((s − ½) log x).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::MeanDescriptor;
use crate::spd::{loewner_leq, SpdMatrix};

use super::bisect::bisect;
use super::pair::{finish_pair, PairWitness};

/// Loewner tolerance of the X ≤ Y precondition.
pub const ORDER_TOL: f64 = 1e-10;

/// Scalar solution with the hyperbolic coordinate c, e^{2c} = y/x.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarPairSolution {
    pub x: f64,
    pub y: f64,
    pub c: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha == 0.0 {
        return Err(Error::DegenerateParameter("alpha = 0 makes f_alpha constant".into()));
    }
    if !(alpha > -1.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha = {alpha} outside (-1, 0) U (0, 1)")));
    }
    Ok(())
}

/// α(s) = 2s − 1, rejecting s = ½ and s outside (0, 1).
pub fn alpha_of(s: f64) -> Result<f64> {
    if s == 0.5 {
        return Err(Error::DegenerateParameter("s = 1/2 collapses f_alpha to 1".into()));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("s = {s} outside (0, 1/2) U (1/2, 1)")));
    }
    Ok(2.0 * s - 1.0)
}

fn f_alpha_unchecked(alpha: f64, c: f64) -> f64 {
    let a2 = alpha * alpha;
    if c <= 20.0 {
        let sh = (0.5 * c).sinh();
        return (alpha * c).cosh() / (1.0 + 2.0 * a2 * sh * sh);
    }
    let aa = alpha.abs();
    let num = ((aa - 1.0) * c).exp() * (1.0 + (-2.0 * aa * c).exp());
    let den = a2 * (1.0 + (-2.0 * c).exp()) + 2.0 * (1.0 - a2) * (-c).exp();
    num / den
}

/// cosh(αc) / (α² cosh c + 1 − α²), a decreasing bijection [0, ∞) → (0, 1].
pub fn f_alpha(alpha: f64, c: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(c >= 0.0) {
        return Err(Error::Domain(format!("f_alpha needs c >= 0, got {c}")));
    }
    Ok(f_alpha_unchecked(alpha, c))
}

/// c ≥ 0 with f_α(c) = r, by bisection after geometric bracket expansion.
pub fn invert_f_alpha(alpha: f64, r: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Domain(format!("f_alpha takes values in (0, 1], got {r}")));
    }
    if r == 1.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while f_alpha_unchecked(alpha, hi) > r {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::Convergence(format!("no bracket for f_alpha = {r:e}")));
        }
    }
    bisect(|c| f_alpha_unchecked(alpha, c) - r, 0.0, hi)
}

/// k_s(x) = 2√x / (x^s + x^{1−s}) = sech((s − ½) log x).
pub fn k_s(s: f64, x: f64) -> Result<f64> {
    alpha_of(s)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("k_s needs x > 0, got {x}")));
    }
    Ok(1.0 / ((s - 0.5) * x.ln()).cosh())
}

/// x ≥ 1 with k_s(x) = r: x = exp(acosh(1/r) / |s − ½|).
pub fn invert_k_s(s: f64, r: f64) -> Result<f64> {
    alpha_of(s)?;
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Domain(format!("k_s takes values in (0, 1], got {r}")));
    }
    Ok(((1.0 / r).acosh() / (s - 0.5).abs()).exp())
}

fn heinz_unit(s: f64, x: f64) -> f64 {
    0.5 * (x.powf(s) + x.powf(1.0 - s))
}

fn heron_unit(alpha2: f64, x: f64) -> f64 {
    alpha2 * 0.5 * (1.0 + x) + (1.0 - alpha2) * x.sqrt()
}

/// Positive x ≤ y with Heinz_s(x, y) = a and Heron_{α²}(x, y) = b, for a ≤ b.
pub fn solve_scalar_heinz_heron(s: f64, a: f64, b: f64) -> Result<ScalarPairSolution> {
    let alpha = alpha_of(s)?;
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("targets must be positive, got {a}, {b}")));
    }
    if a > b {
        return Err(Error::Order(format!("need a <= b, got {a} > {b}")));
    }
    let c = invert_f_alpha(alpha, a / b)?;
    let ratio = (2.0 * c).exp();
    let x = a / heinz_unit(s, ratio);
    Ok(ScalarPairSolution { x, y: x * ratio, c })
}

/// A, B with Heinz_s(A, B) = X and Heron_{α(s)²}(A, B) = Y, for 0 < X ≤ Y.
pub fn solve_heinz_heron_matrix(s: f64, x: &SpdMatrix, y: &SpdMatrix) -> Result<PairWitness> {
    let alpha = alpha_of(s)?;
    let alpha2 = alpha * alpha;
    x.check_same_dim(y)?;
    if !loewner_leq(x, y, ORDER_TOL)? {
        return Err(Error::Order("need X <= Y".into()));
    }
    let (root, inv_root) = y.sqrt_and_inv_sqrt()?;
    let d = x.congruence(&inv_root).decompose()?;
    let mut a0 = Vec::with_capacity(d.n());
    let mut b0 = Vec::with_capacity(d.n());
    for &r in &d.eigenvalues {
        let c = invert_f_alpha(alpha, r.min(1.0))?;
        let ratio = (2.0 * c).exp();
        let a = 1.0 / heron_unit(alpha2, ratio);
        a0.push(a);
        b0.push(a * ratio);
    }
    let a = d.compose(&a0).congruence(&root);
    let b = d.compose(&b0).congruence(&root);
    finish_pair(a, b, x, y, &MeanDescriptor::Heinz(s), &MeanDescriptor::Heron(alpha2))
}

/// A, B with A#B = X and Heinz_s(A, B) = Y, for 0 < X ≤ Y.
pub fn solve_geom_heinz_matrix(s: f64, x: &SpdMatrix, y: &SpdMatrix) -> Result<PairWitness> {
    alpha_of(s)?;
    x.check_same_dim(y)?;
    if !loewner_leq(x, y, ORDER_TOL)? {
        return Err(Error::Order("need X <= Y".into()));
    }
    let (root, inv_root) = x.sqrt_and_inv_sqrt()?;
    let d = y.congruence(&inv_root).decompose()?;
    let mut a0 = Vec::with_capacity(d.n());
    let mut b0 = Vec::with_capacity(d.n());
    for &z in &d.eigenvalues {
        let t = invert_k_s(s, (1.0 / z).min(1.0))?;
        let h = t.sqrt();
        a0.push(1.0 / h);
        b0.push(h);
    }
    let a = d.compose(&a0).congruence(&root);
    let b = d.compose(&b0).congruence(&root);
    finish_pair(a, b, x, y, &MeanDescriptor::Geometric, &MeanDescriptor::Heinz(s))
}
