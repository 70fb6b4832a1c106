use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::MeanDescriptor;
use crate::spd::{loewner_leq, SpdMatrix};

use super::pair::{PairSolver, PairWitness};

/// Loewner tolerance for the link relations.
pub const CHAIN_TOL: f64 = 1e-10;

/// X = Z₀ ≤ Z₁ ≤ … ≤ Z_m = Y with Z_{k+1} ≤ γ₀ Z_k, and a pair realizing
/// each consecutive link.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainWitness {
    pub links: Vec<SpdMatrix>,
    #[serde(serialize_with = "crate::io::serialize_extended", deserialize_with = "crate::io::deserialize_extended")]
    pub gamma0: f64,
    pub witnesses: Vec<PairWitness>,
}

/// Which link relations hold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainCheck {
    pub increasing: bool,
    pub ratio_bounded: bool,
    pub max_residual: f64,
}

impl ChainCheck {
    pub fn holds(&self, residual_tol: f64) -> bool {
        self.increasing && self.ratio_bounded && self.max_residual <= residual_tol
    }
}

impl ChainWitness {
    /// Number of steps Z_k → Z_{k+1}.
    pub fn steps(&self) -> usize {
        self.links.len().saturating_sub(1)
    }

    pub fn verify(&self, tol: f64) -> Result<ChainCheck> {
        let mut check = ChainCheck { increasing: true, ratio_bounded: true, max_residual: 0.0 };
        for w in self.links.windows(2) {
            check.increasing &= loewner_leq(&w[0], &w[1], tol)?;
            check.ratio_bounded &= loewner_leq(&w[1], &w[0].as_matrix().scale(self.gamma0), tol)?;
        }
        for w in &self.witnesses {
            check.max_residual = check.max_residual.max(w.residual_x).max(w.residual_y);
        }
        Ok(check)
    }
}

/// Smallest integer m with γ₀^m < λ ≤ γ₀^{m+1}.
fn level(lambda: f64, gamma0: f64) -> i32 {
    let mut m = (lambda.ln() / gamma0.ln()).ceil() as i32 - 1;
    while gamma0.powi(m) >= lambda {
        m -= 1;
    }
    while gamma0.powi(m + 1) < lambda {
        m += 1;
    }
    m
}

/// Chain from X to Y for 0 < X ≤ Y, in the eigenbasis of Y₀ = X^{-1/2} Y X^{-1/2}.
///
/// Eigenvalues λ of Y₀ are processed in ascending order. The directions not
/// yet at their target share a common level γ₀^j; each eigenvalue raises
/// that level to γ₀^{m} (γ₀^{m} < λ ≤ γ₀^{m+1}) one factor at a time and is
/// then substituted. Eigenvalues equal to 1 stay put.
pub fn build_monotone_chain(
    mean: &MeanDescriptor,
    x: &SpdMatrix,
    y: &SpdMatrix,
    gamma0: Option<f64>,
) -> Result<ChainWitness> {
    let solver = PairSolver::new(mean)?;
    let gamma = solver.gamma();
    if !(gamma > 1.0) {
        return Err(Error::UnsupportedMean(format!("{mean} has gamma = {gamma:e}, need gamma > 1")));
    }
    let gamma0 = gamma0.unwrap_or(if gamma.is_finite() { gamma.sqrt() } else { 2.0 });
    if !(gamma0 > 1.0 && gamma0 < gamma && gamma0.is_finite()) {
        return Err(Error::Domain(format!("gamma0 = {gamma0} must lie in (1, {gamma:e})")));
    }
    x.check_same_dim(y)?;
    if !loewner_leq(x, y, CHAIN_TOL)? {
        return Err(Error::Order("chain needs X <= Y".into()));
    }
    let (root, inv_root) = x.sqrt_and_inv_sqrt()?;
    let d = y.congruence(&inv_root).decompose()?;
    let n = d.n();
    let mut order: Vec<usize> = (0..n).filter(|&i| d.eigenvalues[i] > 1.0 + super::pair::UNIT_SNAP).collect();
    order.sort_by(|&i, &j| d.eigenvalues[i].total_cmp(&d.eigenvalues[j]));

    let mut levels = vec![1.0; n];
    let mut done = vec![false; n];
    let mut links = vec![x.clone()];
    let push = |levels: &[f64], links: &mut Vec<SpdMatrix>| {
        links.push(SpdMatrix::from_trusted(d.compose(levels).congruence(&root)));
    };
    let mut j = 0;
    let mut k = 0;
    while k < order.len() {
        let lam = d.eigenvalues[order[k]];
        let mut group = vec![order[k]];
        while k + group.len() < order.len()
            && d.eigenvalues[order[k + group.len()]] <= lam * (1.0 + 1e-12)
        {
            group.push(order[k + group.len()]);
        }
        let m = level(lam, gamma0);
        while j < m {
            j += 1;
            let value = gamma0.powi(j);
            for i in (0..n).filter(|&i| !done[i] && d.eigenvalues[i] > 1.0 + super::pair::UNIT_SNAP) {
                levels[i] = value;
            }
            push(&levels, &mut links);
        }
        for &i in &group {
            levels[i] = d.eigenvalues[i];
            done[i] = true;
        }
        push(&levels, &mut links);
        k += group.len();
    }
    match links.len() {
        1 if y != x => links.push(y.clone()),
        1 => {}
        len => links[len - 1] = y.clone(),
    }
    let witnesses = links
        .windows(2)
        .map(|w| solver.solve(&w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainWitness { links, gamma0, witnesses })
}
