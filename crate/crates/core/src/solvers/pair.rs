use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::func::ScalarFunction;
use crate::means::{eval_mean, eval_mean_with, MeanDescriptor, RepresentingFunction};
use crate::repr::{phi_profile, PhiProfile};
use crate::spd::{relative_distance, Matrix, SpdMatrix};

use super::bisect::bisect;

/// Residual bound of a successful witness.
pub const WITNESS_TOL: f64 = 1e-7;
/// Eigenvalues of Y₀ this close to 1 are treated as 1.
pub const UNIT_SNAP: f64 = 1e-10;
/// Scan resolution of [`invert_phi`].
pub const SCAN_PER_DECADE: usize = 64;
/// Largest t scanned by [`invert_phi`].
pub const SCAN_LIMIT: f64 = 1e150;

/// Matrices realizing two prescribed means, with relative Frobenius residuals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairWitness {
    #[serde(rename = "A")]
    pub a: SpdMatrix,
    #[serde(rename = "B")]
    pub b: SpdMatrix,
    pub residual_x: f64,
    pub residual_y: f64,
}

impl PairWitness {
    pub fn within(&self, tol: f64) -> bool {
        self.residual_x <= tol && self.residual_y <= tol
    }
}

/// Smallest t ≥ 1 with φ(t) = y0.
///
/// For γ > 1 the target must lie in [1, γ); for γ < 1 in (γ, 1]. φ is
/// scanned on a log grid (64 points per decade) for the first crossing,
/// which is then bisected.
pub fn invert_phi(profile: &PhiProfile, y0: f64) -> Result<f64> {
    let gamma = profile.gamma;
    let out = || Error::OutOfRange { value: y0, gamma };
    if !y0.is_finite() || !(y0 > 0.0) {
        return Err(out());
    }
    if (y0 - 1.0).abs() <= UNIT_SNAP {
        return Ok(1.0);
    }
    let increasing = if gamma > 1.0 && y0 > 1.0 && y0 < gamma {
        true
    } else if gamma < 1.0 && y0 < 1.0 && y0 > gamma {
        false
    } else {
        return Err(out());
    };
    let g = |t: f64| {
        let d = profile.phi(t) - y0;
        if increasing {
            d
        } else {
            -d
        }
    };
    let mut lo = 1.0;
    let mut k = 1;
    loop {
        let hi = 10f64.powf(k as f64 / SCAN_PER_DECADE as f64);
        if hi > SCAN_LIMIT {
            return Err(out());
        }
        let v = g(hi);
        if v >= 0.0 {
            return bisect(g, lo, hi);
        }
        if v.is_nan() {
            return Err(Error::Domain(format!("phi undefined at t = {hi:e}")));
        }
        lo = hi;
        k += 1;
    }
}

/// Reusable solver for one mean: the representing function, its transpose
/// t·f(1/t) and the φ-profile of the transpose.
///
/// With a scalar δ, δσδ⁻¹ = δ f(δ⁻²), which is φ of the transpose; for
/// symmetric means the transpose is f itself.
#[derive(Clone, Debug)]
pub struct PairSolver {
    f: RepresentingFunction,
    profile: PhiProfile,
}

impl PairSolver {
    pub fn new(mean: &MeanDescriptor) -> Result<Self> {
        Ok(Self::from_function(mean.representing_function()?))
    }

    pub fn from_function(f: RepresentingFunction) -> Self {
        let profile = phi_profile(&f.transpose());
        PairSolver { f, profile }
    }

    pub fn gamma(&self) -> f64 {
        self.profile.gamma
    }

    pub fn profile(&self) -> &PhiProfile {
        &self.profile
    }

    pub fn function(&self) -> &RepresentingFunction {
        &self.f
    }

    /// A, B with A#B = X and AσB = Y.
    pub fn solve(&self, x: &SpdMatrix, y: &SpdMatrix) -> Result<PairWitness> {
        x.check_same_dim(y)?;
        let (root, inv_root) = x.sqrt_and_inv_sqrt()?;
        let y0 = y.congruence(&inv_root);
        let d = y0.decompose()?;
        let deltas = d
            .eigenvalues
            .iter()
            .map(|&lambda| invert_phi(&self.profile, lambda))
            .collect::<Result<Vec<_>>>()?;
        let a0 = d.compose(&deltas);
        let b0 = d.compose(&deltas.iter().map(|v| 1.0 / v).collect::<Vec<_>>());
        let a = SpdMatrix::from_trusted(a0.congruence(&root));
        let b = SpdMatrix::from_trusted(b0.congruence(&root));
        let witness = finish(&a, &b, x, y, &MeanDescriptor::Geometric, &self.f)?;
        Ok(PairWitness { a, b, ..witness })
    }
}

fn finish(
    a: &SpdMatrix,
    b: &SpdMatrix,
    x: &SpdMatrix,
    y: &SpdMatrix,
    first: &MeanDescriptor,
    second: &dyn ScalarFunction,
) -> Result<PairWitness> {
    let residual_x = relative_distance(eval_mean(first, a, b)?.as_matrix(), x);
    let residual_y = relative_distance(eval_mean_with(second, a, b)?.as_matrix(), y);
    let w = PairWitness { a: a.clone(), b: b.clone(), residual_x, residual_y };
    if !w.within(WITNESS_TOL) {
        return Err(Error::Convergence(format!(
            "witness residuals {residual_x:e}, {residual_y:e} exceed {WITNESS_TOL:e}"
        )));
    }
    Ok(w)
}

pub(crate) fn finish_pair(
    a: Matrix,
    b: Matrix,
    x: &SpdMatrix,
    y: &SpdMatrix,
    first: &MeanDescriptor,
    second: &MeanDescriptor,
) -> Result<PairWitness> {
    let (a, b) = (SpdMatrix::from_trusted(a), SpdMatrix::from_trusted(b));
    finish(&a, &b, x, y, first, &second.representing_function()?)
}

/// A, B with A#B = X and AσB = Y, for X ≤ Y < γX (or γX < Y ≤ X when γ < 1).
pub fn solve_matrix_pair(mean: &MeanDescriptor, x: &SpdMatrix, y: &SpdMatrix) -> Result<PairWitness> {
    PairSolver::new(mean)?.solve(x, y)
}

/// Scalar a, b with √(ab) = x and M(a, b) = y, via the 1×1 matrix path.
pub fn solve_scalar_geometric_pair(mean: &MeanDescriptor, x: f64, y: f64) -> Result<(f64, f64)> {
    let xm = SpdMatrix::scalar(1, x)?;
    let ym = SpdMatrix::scalar(1, y)?;
    let w = solve_matrix_pair(mean, &xm, &ym)?;
    Ok((w.a.get(0, 0), w.b.get(0, 0)))
}
