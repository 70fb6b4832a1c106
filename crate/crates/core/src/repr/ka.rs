//! Sampled check of the Kubo-Ando condition (AτB)σ(Aτ⊥B) ≤ AσB, where τ⊥
//! is represented by g†(t) = t/g(t).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::means::{eval_mean, eval_mean_with, MeanDescriptor};
use crate::spd::{loewner_margin, random_spd_with, Matrix, PSD_ABS_FLOOR};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KaConfig {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub cond_cap: f64,
}

impl Default for KaConfig {
    fn default() -> Self {
        KaConfig { n: 3, trials: 1000, seed: 42, tol: 1e-8, cond_cap: 100.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KaViolation {
    pub trial: usize,
    pub a: Matrix,
    pub b: Matrix,
    /// λ_min(AσB − (AτB)σ(Aτ⊥B))
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KaReport {
    pub sigma: MeanDescriptor,
    pub tau: MeanDescriptor,
    pub trials_run: usize,
    pub violations: usize,
    /// Smallest margin relative to max(1, ‖difference‖_F).
    pub worst_margin: f64,
    /// First violation by trial index.
    pub witness: Option<KaViolation>,
}

/// Samples random SPD pairs and records violations of the condition.
pub fn ka_condition_check(sigma: &MeanDescriptor, tau: &MeanDescriptor, config: &KaConfig) -> Result<KaReport> {
    let g = tau.representing_function()?;
    let g_perp = g.dagger();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = KaReport {
        sigma: sigma.clone(),
        tau: tau.clone(),
        trials_run: 0,
        violations: 0,
        worst_margin: f64::INFINITY,
        witness: None,
    };
    for trial in 0..config.trials {
        let a = random_spd_with(&mut rng, config.n, config.cond_cap)?;
        let b = random_spd_with(&mut rng, config.n, config.cond_cap)?;
        let left = eval_mean_with(&g, &a, &b)?;
        let right = eval_mean_with(&g_perp, &a, &b)?;
        let lhs = eval_mean(sigma, &left, &right)?;
        let rhs = eval_mean(sigma, &a, &b)?;
        let norm = (&*rhs - &*lhs).frobenius_norm().max(1.0);
        let margin = loewner_margin(&lhs, &rhs)?;
        report.trials_run += 1;
        report.worst_margin = report.worst_margin.min(margin / norm);
        if margin < -config.tol.max(PSD_ABS_FLOOR) * norm {
            report.violations += 1;
            if report.witness.is_none() {
                report.witness =
                    Some(KaViolation { trial, a: a.into_matrix(), b: b.into_matrix(), margin });
            }
        }
    }
    if !report.worst_margin.is_finite() {
        report.worst_margin = 0.0;
    }
    Ok(report)
}

/// Parameter grid of candidate τ: wgeo(w), heron(s), heinz(s) for w, s in 0.1..0.9.
pub fn ka_tau_family() -> Vec<MeanDescriptor> {
    let grid: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let mut out = Vec::with_capacity(27);
    out.extend(grid.iter().map(|&w| MeanDescriptor::WeightedGeometric(w)));
    out.extend(grid.iter().map(|&s| MeanDescriptor::Heron(s)));
    out.extend(grid.iter().map(|&s| MeanDescriptor::Heinz(s)));
    out
}

/// Runs [`ka_condition_check`] for every τ in [`ka_tau_family`].
pub fn ka_sweep(sigma: &MeanDescriptor, config: &KaConfig) -> Result<Vec<KaReport>> {
    ka_tau_family().iter().map(|tau| ka_condition_check(sigma, tau, config)).collect()
}
