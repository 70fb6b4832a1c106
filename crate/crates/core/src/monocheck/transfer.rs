use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::{log_grid, ScalarFunction};
use crate::means::{eval_mean, MeanDescriptor};
use crate::spd::{apply_spectral_function, loewner_margin, random_spd_with};

use super::{MonotonicityVerdict, Witness};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransferConfig {
    /// Trials per dimension.
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub cond_cap: f64,
    /// Dimensions tried in order; the search stops at the first witness.
    pub dims: Vec<usize>,
}

impl Default for TransferConfig {
    fn default() -> Self {
        TransferConfig { trials: 1000, seed: 42, tol: 1e-8, cond_cap: 50.0, dims: vec![2, 3, 4] }
    }
}

/// Searches for SPD A, B with f(AσB) ≰ f(AτB), given σ ≤ τ.
///
/// The order σ ≤ τ is checked on the representing functions over a log
/// grid first; a failure is a usage error.
pub fn falsify_transfer(
    f: &dyn ScalarFunction,
    sigma: &MeanDescriptor,
    tau: &MeanDescriptor,
    config: &TransferConfig,
) -> Result<MonotonicityVerdict> {
    let fs = sigma.representing_function()?;
    let ft = tau.representing_function()?;
    for t in log_grid(1e-3, 1e3, 121) {
        let (a, b) = (fs.eval(t), ft.eval(t));
        if a > b * (1.0 + 1e-12) {
            return Err(Error::Usage(format!(
                "{sigma} is not below {tau} (at t = {t:e}: {a:e} > {b:e})"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut margins = Vec::with_capacity(config.dims.len());
    let mut run = 0;
    for &n in &config.dims {
        let mut worst = f64::INFINITY;
        for _ in 0..config.trials {
            let a = random_spd_with(&mut rng, n, config.cond_cap)?;
            let b = random_spd_with(&mut rng, n, config.cond_cap)?;
            run += 1;
            let lower = eval_mean(sigma, &a, &b)?;
            let upper = eval_mean(tau, &a, &b)?;
            let (Ok(fl), Ok(fu)) = (
                apply_spectral_function(&lower, |x| f.eval(x)),
                apply_spectral_function(&upper, |x| f.eval(x)),
            ) else {
                continue;
            };
            let diff = &fu - &fl;
            let norm = diff.frobenius_norm().max(1.0);
            let margin = loewner_margin(&fl, &fu)?;
            worst = worst.min(margin / norm);
            if margin < -config.tol.max(crate::spd::PSD_ABS_FLOOR) * norm {
                margins.push(worst);
                let witness = Witness::MatrixPair {
                    a: a.into_matrix(),
                    b: b.into_matrix(),
                    lower: lower.into_matrix(),
                    upper: upper.into_matrix(),
                    margin,
                };
                return Ok(MonotonicityVerdict::refuted(witness, margins, run));
            }
        }
        margins.push(if worst.is_finite() { worst } else { 0.0 });
    }
    Ok(MonotonicityVerdict::consistent(margins, run))
}
