use serde::Serialize;

use crate::func::{log_grid, ScalarFunction};
use crate::means::RepresentingFunction;

/// Direction of a sampled function on an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Constant,
    NonDecreasing,
    NonIncreasing,
    Mixed,
}

impl Monotonicity {
    /// Classifies consecutive differences with a tolerance relative to max(1, |value|).
    pub fn classify(values: &[f64], tol: f64) -> Monotonicity {
        let (mut up, mut down) = (false, false);
        for w in values.windows(2) {
            let d = w[1] - w[0];
            let slack = tol * w[0].abs().max(w[1].abs()).max(1.0);
            if d > slack {
                up = true;
            } else if d < -slack {
                down = true;
            }
        }
        match (up, down) {
            (false, false) => Monotonicity::Constant,
            (true, false) => Monotonicity::NonDecreasing,
            (false, true) => Monotonicity::NonIncreasing,
            (true, true) => Monotonicity::Mixed,
        }
    }

    pub fn is_non_decreasing(self) -> bool {
        matches!(self, Monotonicity::Constant | Monotonicity::NonDecreasing)
    }

    pub fn is_non_increasing(self) -> bool {
        matches!(self, Monotonicity::Constant | Monotonicity::NonIncreasing)
    }
}

/// Tolerance used for the monotonicity flags.
pub const PHI_DIFF_TOL: f64 = 1e-7;
/// Values beyond this count as divergence to ∞ (below the reciprocal, to 0).
pub const PHI_DIVERGENCE: f64 = 1e12;
/// Log-log slope of the tail above which φ is still growing.
pub const PHI_TAIL_SLOPE: f64 = 1e-3;
/// Samples φ(2^k) for k = 0..=PHI_SAMPLES.
pub const PHI_SAMPLES: i32 = 40;

/// φ(t) = f(t²)/t = tσt⁻¹ together with its limit γ at infinity.
#[derive(Clone, Debug, Serialize)]
pub struct PhiProfile {
    #[serde(skip)]
    pub f: RepresentingFunction,
    #[serde(serialize_with = "crate::io::serialize_extended")]
    pub gamma: f64,
    /// Direction on (0, 1).
    pub below_one: Monotonicity,
    /// Direction on (1, ∞).
    pub above_one: Monotonicity,
}

impl PhiProfile {
    pub fn phi(&self, t: f64) -> f64 {
        phi_of(&self.f, t)
    }

    pub fn is_increasing_branch(&self) -> bool {
        self.gamma > 1.0
    }
}

pub(crate) fn phi_of(f: &dyn ScalarFunction, t: f64) -> f64 {
    f.eval(t * t) / t
}

/// Estimates γ = lim φ(t) from φ(2^k), k = 0..40, and samples the
/// direction of φ on (0, 1) and (1, ∞).
pub fn phi_profile(f: &RepresentingFunction) -> PhiProfile {
    let samples: Vec<f64> = (0..=PHI_SAMPLES).map(|k| phi_of(f, 2f64.powi(k))).collect();
    let gamma = estimate_gamma(&samples);
    let below: Vec<f64> = log_grid(1e-6, 1.0, 241).iter().map(|&t| phi_of(f, t)).collect();
    let above: Vec<f64> = log_grid(1.0, 1e6, 241).iter().map(|&t| phi_of(f, t)).collect();
    PhiProfile {
        f: f.clone(),
        gamma,
        below_one: Monotonicity::classify(&below, PHI_DIFF_TOL),
        above_one: Monotonicity::classify(&above, PHI_DIFF_TOL),
    }
}

fn estimate_gamma(samples: &[f64]) -> f64 {
    let n = samples.len();
    if samples.iter().any(|p| !p.is_finite() || *p > PHI_DIVERGENCE) {
        return f64::INFINITY;
    }
    if samples.iter().any(|&p| p < 1.0 / PHI_DIVERGENCE) {
        return 0.0;
    }
    let slope = (samples[n - 1] / samples[n - 2]).ln() / std::f64::consts::LN_2;
    if slope > PHI_TAIL_SLOPE {
        f64::INFINITY
    } else if slope < -PHI_TAIL_SLOPE {
        0.0
    } else {
        samples[n - 1]
    }
}
