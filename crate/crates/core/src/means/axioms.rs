use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::func::log_grid;
use crate::monocheck::{is_operator_monotone_sampled, MonotoneConfig};
use crate::spd::{random_invertible_with, random_spd_with, relative_distance};

use super::{eval_mean, MeanDescriptor};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomConfig {
    pub grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub n: usize,
    pub cond_cap: f64,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        AxiomConfig { grid: log_grid(1e-3, 1e3, 61), trials: 100, seed: 42, n: 3, cond_cap: 100.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub pass: bool,
    /// Largest observed defect (0 when not applicable).
    pub defect: f64,
}

impl AxiomCheck {
    fn new(defect: f64, tol: f64) -> Self {
        AxiomCheck { pass: defect <= tol, defect }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub mean: MeanDescriptor,
    pub normalization: AxiomCheck,
    pub symmetry: AxiomCheck,
    pub monotonicity: AxiomCheck,
    pub transformer: AxiomCheck,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.normalization.pass && self.symmetry.pass && self.monotonicity.pass && self.transformer.pass
    }
}

/// Normalization f(1) = 1, the scalar symmetry identity t·f(1/t) = f(t),
/// sampled operator monotonicity, and C(AσB)Cᵀ = (CACᵀ)σ(CBCᵀ).
pub fn verify_mean_axioms(mean: &MeanDescriptor, config: &AxiomConfig) -> Result<AxiomReport> {
    let f = mean.representing_function()?;
    let normalization = AxiomCheck::new((f.try_eval(1.0)? - 1.0).abs(), 1e-12);
    let symmetry = AxiomCheck::new(f.symmetry_defect(&config.grid), 1e-10);
    let mono_cfg = MonotoneConfig { trials: config.trials, seed: config.seed, ..MonotoneConfig::default() };
    let verdict = is_operator_monotone_sampled(&f, &mono_cfg);
    let monotonicity = AxiomCheck {
        pass: verdict.is_consistent(),
        defect: verdict.margins.iter().fold(0.0f64, |acc, &m| acc.max(-m)),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst = 0.0f64;
    for _ in 0..config.trials {
        let a = random_spd_with(&mut rng, config.n, config.cond_cap)?;
        let b = random_spd_with(&mut rng, config.n, config.cond_cap)?;
        let c = random_invertible_with(&mut rng, config.n, config.cond_cap.sqrt());
        let lhs = eval_mean(mean, &a, &b)?.congruence(&c);
        let rhs = eval_mean(mean, &a.congruence(&c), &b.congruence(&c))?;
        worst = worst.max(relative_distance(&rhs, &lhs));
    }
    let transformer = AxiomCheck::new(worst, 1e-8);
    Ok(AxiomReport { mean: mean.clone(), normalization, symmetry, monotonicity, transformer })
}
