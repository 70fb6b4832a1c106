use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::{log_grid, ScalarFunction};
use crate::spd::{sym_eigendecompose, Matrix};

use super::{MonotonicityVerdict, Witness};

/// Divided differences of f; the diagonal holds f'.
pub fn loewner_matrix(f: &dyn ScalarFunction, points: &[f64]) -> Result<Matrix> {
    for (i, &x) in points.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::Structural(format!("non-finite point {x}")));
        }
        if points[..i].contains(&x) {
            return Err(Error::Structural(format!("duplicate point {x}")));
        }
    }
    let values: Vec<f64> = points.iter().map(|&x| f.eval(x)).collect();
    let n = points.len();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        m.set(i, i, f.deriv(points[i]));
        for j in 0..i {
            let d = (values[i] - values[j]) / (points[i] - points[j]);
            m.set(i, j, d);
            m.set(j, i, d);
        }
    }
    Ok(m)
}

/// Sampling plan for [`is_operator_monotone_sampled`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotoneConfig {
    pub lo: f64,
    pub hi: f64,
    pub sizes: Vec<usize>,
    /// Random point sets drawn after the structured ones.
    pub trials: usize,
    pub seed: u64,
    /// A set refutes when λ_min(L) < −tol·‖L‖_F.
    pub tol: f64,
}

impl Default for MonotoneConfig {
    fn default() -> Self {
        MonotoneConfig { lo: 1e-3, hi: 1e3, sizes: vec![2, 3, 4, 6, 8], trials: 1000, seed: 42, tol: 1e-8 }
    }
}

/// Relative gap between the two members of each near-collision pair.
pub const NEAR_COLLISION_GAP: f64 = 1e-5;

/// (λ_min(L), ‖L‖_F), or None if L has non-finite entries.
pub(crate) fn loewner_spectrum(f: &dyn ScalarFunction, points: &[f64]) -> Option<(f64, f64)> {
    let l = loewner_matrix(f, points).ok()?;
    if l.as_slice().iter().any(|v| !v.is_finite()) {
        return None;
    }
    let min = sym_eigendecompose(&l).ok()?.min_eigenvalue();
    Some((min, l.frobenius_norm()))
}

fn structured_sets(config: &MonotoneConfig, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let (a, b) = (config.lo.ln(), config.hi.ln());
    let mut sets = Vec::new();
    for &n in &config.sizes {
        sets.push(log_grid(config.lo, config.hi, n));
        // clustered around a random centre
        let c = (a + (b - a) * rng.random::<f64>()).exp();
        sets.push((0..n).map(|k| c * (1.0 + 0.01 * k as f64)).collect());
        // log-spaced pairs, each with a close neighbour
        let base = log_grid(config.lo, config.hi / (1.0 + NEAR_COLLISION_GAP), n.div_ceil(2));
        let mut near: Vec<f64> =
            base.iter().flat_map(|&x| [x, x * (1.0 + NEAR_COLLISION_GAP)]).take(n).collect();
        near.dedup();
        sets.push(near);
    }
    sets
}

fn random_set(config: &MonotoneConfig, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let (a, b) = (config.lo.ln(), config.hi.ln());
    let mut pts: Vec<f64> = (0..n).map(|_| (a + (b - a) * rng.random::<f64>()).exp()).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Searches for a point set whose Loewner matrix is not PSD.
///
/// `Consistent` only means no refutation was found.
pub fn is_operator_monotone_sampled(f: &dyn ScalarFunction, config: &MonotoneConfig) -> MonotonicityVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut margins = vec![f64::INFINITY; config.sizes.len()];
    let mut run = 0;
    let structured = structured_sets(config, &mut rng);
    let mut check = |pts: &[f64], slot: usize, run: &mut usize| -> Option<MonotonicityVerdict> {
        let (min, norm) = loewner_spectrum(f, pts)?;
        *run += 1;
        let rel = if norm > 0.0 { min / norm } else { 0.0 };
        margins[slot] = margins[slot].min(rel);
        if min < -config.tol * norm {
            return Some(MonotonicityVerdict::refuted(
                Witness::Points { points: pts.to_vec(), min_eigenvalue: min, frobenius_norm: norm },
                Vec::new(),
                *run,
            ));
        }
        None
    };
    for (k, set) in structured.iter().enumerate() {
        if let Some(v) = check(set, k / 3, &mut run) {
            return v;
        }
    }
    if !config.sizes.is_empty() {
        for trial in 0..config.trials {
            let slot = trial % config.sizes.len();
            let set = random_set(config, config.sizes[slot], &mut rng);
            if let Some(v) = check(&set, slot, &mut run) {
                return v;
            }
        }
    }
    let margins = margins.into_iter().map(|m| if m.is_finite() { m } else { 0.0 }).collect();
    MonotonicityVerdict::consistent(margins, run)
}
