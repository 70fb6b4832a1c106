//! Quadrature evaluation of the symmetric and self-adjoint integral
//! representations.
//!
//! Symmetric class, density h on [0, 1]:
//!
//! ```text
//! f(t) = (1+t)/2 · exp H(t),
//! H(t) = ∫₀¹ (λ²−1)(1−t)² / ((t+λ)(1+tλ)(λ+1)²) · h(λ) dλ
//! ```
//!
//! Self-adjoint class, density h on [−1, 0]:
//!
//! ```text
//! f(t) = exp ∫₋₁⁰ (1/(λ−t) + t/(1−λt)) · h(λ) dλ
//! ```
//!
//! Both integrands are smooth on the closed domain for t > 0 but have poles
//! just outside it (at −t and −1/t, resp. t and 1/t) which approach the
//! endpoint 0 as t → 0 or t → ∞. Panels are graded toward those poles.

use crate::error::{Error, Result};
use crate::func::ScalarFunction;
use crate::quadrature::{graded_breaks, GaussLegendre};

use super::density::{DensityClass, HDensity};

/// Exponent integral and its t-derivative at t.
///
/// Symmetric class: (H(t), H'(t)). Self-adjoint class: (G(t), G'(t)) with f = exp G.
pub fn rep_exponent(h: &HDensity, t: f64) -> (f64, f64) {
    let rule = GaussLegendre::standard();
    let poles: [f64; 3] = match h.class() {
        DensityClass::Symmetric => [-t, -1.0 / t, -1.0],
        DensityClass::SelfAdjoint => [t, 1.0 / t, f64::INFINITY],
    };
    let (mut value, mut slope) = (0.0, 0.0);
    for (a, b, weight) in h.pieces() {
        if weight == 0.0 {
            continue;
        }
        let (mut v, mut s) = (0.0, 0.0);
        for w in graded_breaks(a, b, &poles).windows(2) {
            let half = 0.5 * (w[1] - w[0]);
            let mid = 0.5 * (w[1] + w[0]);
            let (mut pv, mut ps) = (0.0, 0.0);
            for (&x, &wt) in rule.nodes.iter().zip(&rule.weights) {
                let lambda = mid + half * x;
                let (k, dk) = match h.class() {
                    DensityClass::Symmetric => symmetric_kernel(lambda, t),
                    DensityClass::SelfAdjoint => self_adjoint_kernel(lambda, t),
                };
                pv += wt * k;
                ps += wt * dk;
            }
            v += pv * half;
            s += ps * half;
        }
        value += weight * v;
        slope += weight * s;
    }
    (value, slope)
}

/// Integrand of H and of ∂H/∂t.
#[inline]
fn symmetric_kernel(lambda: f64, t: f64) -> (f64, f64) {
    let p = t + lambda;
    let q = 1.0 + t * lambda;
    let r = lambda + 1.0;
    let one_minus_t = 1.0 - t;
    let k = (lambda * lambda - 1.0) * one_minus_t * one_minus_t / (p * q * r * r);
    let dk = (1.0 - lambda * lambda) * (1.0 - t * t) / (p * p * q * q);
    (k, dk)
}

/// Integrand of G and ∂G/∂t, with 1/(λ−t) + t/(1−λt) combined as
/// (1−t²)/((λ−t)(1−λt)) to avoid cancellation near t = 1.
#[inline]
fn self_adjoint_kernel(lambda: f64, t: f64) -> (f64, f64) {
    let p = lambda - t;
    let q = 1.0 - lambda * t;
    let k = (1.0 - t * t) / (p * q);
    let dk = 1.0 / (p * p) + 1.0 / (q * q);
    (k, dk)
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("representation argument must be positive, got {t}")))
    }
}

fn check_class(h: &HDensity, want: DensityClass) -> Result<()> {
    if h.class() == want {
        Ok(())
    } else {
        Err(Error::Structural(format!("expected a {want:?} density, got {:?}", h.class())))
    }
}

/// f(t) = ((1+t)/2)·exp H(t) for a symmetric-class density.
pub fn eval_symmetric_rep(h: &HDensity, t: f64) -> Result<f64> {
    check_class(h, DensityClass::Symmetric)?;
    check_t(t)?;
    Ok(value_and_deriv(h, t).0)
}

/// f(t) = exp ∫ (1/(λ−t) + t/(1−λt)) h(λ) dλ for a self-adjoint-class density.
pub fn eval_selfadjoint_rep(h: &HDensity, t: f64) -> Result<f64> {
    check_class(h, DensityClass::SelfAdjoint)?;
    check_t(t)?;
    Ok(value_and_deriv(h, t).0)
}

/// (f(t), f'(t)) for either class; t must be positive.
pub(crate) fn value_and_deriv(h: &HDensity, t: f64) -> (f64, f64) {
    let (e, de) = rep_exponent(h, t);
    match h.class() {
        DensityClass::Symmetric => {
            let f = 0.5 * (1.0 + t) * e.exp();
            (f, f * (1.0 / (1.0 + t) + de))
        }
        DensityClass::SelfAdjoint => {
            let f = e.exp();
            (f, f * de)
        }
    }
}

/// The representing function of a density, evaluated by direct quadrature
/// on every call.
#[derive(Clone, Debug)]
pub struct DensityFunction {
    density: HDensity,
}

impl DensityFunction {
    pub fn new(density: HDensity) -> Self {
        DensityFunction { density }
    }

    pub fn density(&self) -> &HDensity {
        &self.density
    }
}

impl ScalarFunction for DensityFunction {
    fn eval(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return f64::NAN;
        }
        value_and_deriv(&self.density, t).0
    }

    fn deriv(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return f64::NAN;
        }
        value_and_deriv(&self.density, t).1
    }
}
