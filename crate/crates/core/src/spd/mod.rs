//! Dense symmetric linear algebra: the positive-definite matrix type,
//! Jacobi eigendecomposition, spectral functional calculus and the Loewner
//! order.

mod eigen;
mod matrix;
mod random;

use std::ops::Deref;

use serde::{Deserialize, Serialize};

pub use eigen::{sym_eigendecompose, SpectralDecomposition, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use matrix::{Matrix, MatrixJson, SYMMETRY_TOL};
pub use random::{random_invertible_with, random_orthogonal_with, random_spd, random_spd_with};

use crate::error::{Error, Result};

/// Smallest eigenvalue accepted by [`SpdMatrix::new`], relative to ‖M‖_F.
pub const PD_TOL: f64 = 1e-12;

/// Absolute floor on the PSD tolerance used by [`loewner_leq`].
pub const PSD_ABS_FLOOR: f64 = 1e-13;

/// Condition number beyond which mean evaluation refuses to proceed.
pub const MAX_CONDITION: f64 = 1e12;

/// Symmetric positive-definite matrix. The invariant is checked when the
/// value is built from untrusted input.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct SpdMatrix(Matrix);

impl SpdMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let d = sym_eigendecompose(&m)?;
        let min = d.min_eigenvalue();
        if min <= PD_TOL * m.frobenius_norm() || min <= 0.0 {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
        }
        Ok(SpdMatrix(m.symmetrize()))
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    /// Wraps a matrix that is positive definite by construction (a spectral
    /// image with positive values, a congruence of an SPD matrix, ...).
    pub(crate) fn from_trusted(m: Matrix) -> Self {
        SpdMatrix(m.symmetrize())
    }

    pub fn identity(n: usize) -> Self {
        SpdMatrix(Matrix::identity(n))
    }

    pub fn scalar(n: usize, value: f64) -> Result<Self> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: value });
        }
        Ok(SpdMatrix(Matrix::scalar(n, value)))
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        Self::new(Matrix::from_diag(diag))
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn decompose(&self) -> Result<SpectralDecomposition> {
        sym_eigendecompose(&self.0)
    }

    /// Returns (M^{1/2}, M^{-1/2}) from a single decomposition.
    pub fn sqrt_and_inv_sqrt(&self) -> Result<(SpdMatrix, SpdMatrix)> {
        let d = self.decompose()?;
        let root = d.map(f64::sqrt)?;
        let inv_root = d.map(|x| 1.0 / x.sqrt())?;
        Ok((SpdMatrix(root), SpdMatrix(inv_root)))
    }

    pub fn sqrt(&self) -> Result<SpdMatrix> {
        Ok(SpdMatrix(self.decompose()?.map(f64::sqrt)?))
    }

    pub fn inverse(&self) -> Result<SpdMatrix> {
        Ok(SpdMatrix(self.decompose()?.map(|x| 1.0 / x)?))
    }

    /// S M Sᵀ for invertible S.
    pub fn congruence(&self, s: &Matrix) -> SpdMatrix {
        SpdMatrix(self.0.congruence(s))
    }

    pub fn scale(&self, factor: f64) -> Result<SpdMatrix> {
        if !(factor > 0.0) {
            return Err(Error::Domain(format!("SPD scale factor must be positive, got {factor}")));
        }
        Ok(SpdMatrix(self.0.scale(factor)))
    }

    pub fn condition_number(&self) -> Result<f64> {
        let d = self.decompose()?;
        Ok(d.max_eigenvalue() / d.min_eigenvalue())
    }
}

impl TryFrom<MatrixJson> for SpdMatrix {
    type Error = Error;
    fn try_from(json: MatrixJson) -> Result<Self> {
        SpdMatrix::new(Matrix::try_from(json)?)
    }
}

impl From<SpdMatrix> for MatrixJson {
    fn from(m: SpdMatrix) -> Self {
        m.0.into()
    }
}

impl Deref for SpdMatrix {
    type Target = Matrix;
    fn deref(&self) -> &Matrix {
        &self.0
    }
}

impl std::fmt::Debug for SpdMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Spd{:?}", self.0)
    }
}

/// U diag(g(λ_i)) Uᵀ for the symmetric matrix `m`.
pub fn apply_spectral_function(m: &Matrix, g: impl Fn(f64) -> f64) -> Result<Matrix> {
    sym_eigendecompose(m)?.map(g)
}

/// Smallest eigenvalue of B − A.
pub fn loewner_margin(a: &Matrix, b: &Matrix) -> Result<f64> {
    a.check_same_dim(b)?;
    Ok(sym_eigendecompose(&(b - a))?.min_eigenvalue())
}

/// A ≤ B in the Loewner order, up to a PSD slack of
/// `max(tol, 1e-13) · max(1, ‖B − A‖_F)`.
pub fn loewner_leq(a: &Matrix, b: &Matrix, tol: f64) -> Result<bool> {
    a.check_same_dim(b)?;
    let diff = b - a;
    let slack = tol.max(PSD_ABS_FLOOR) * diff.frobenius_norm().max(1.0);
    Ok(sym_eigendecompose(&diff)?.min_eigenvalue() >= -slack)
}

/// Relative Frobenius distance ‖A − B‖_F / ‖B‖_F.
pub fn relative_distance(a: &Matrix, b: &Matrix) -> f64 {
    let denom = b.frobenius_norm();
    let num = (a - b).frobenius_norm();
    if denom == 0.0 {
        num
    } else {
        num / denom
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_identity_function_is_identity() {
        let m = random_spd(4, 50.0, 3).unwrap();
        let out = apply_spectral_function(&m, |x| x).unwrap();
        assert!(relative_distance(&out, &m) <= 1e-12);
    }

    #[test]
    fn spectral_sqrt_of_diagonal() {
        let out = apply_spectral_function(&Matrix::from_diag(&[4.0, 9.0]), f64::sqrt).unwrap();
        assert_eq!(out, Matrix::from_diag(&[2.0, 3.0]));
    }

    #[test]
    fn spectral_sqrt_squares_back() {
        for seed in 0..20 {
            let m = random_spd(5, 1e3, seed).unwrap();
            let r = apply_spectral_function(&m, f64::sqrt).unwrap();
            assert!(relative_distance(&r.matmul(&r), &m) <= 1e-10);
        }
    }

    #[test]
    fn loewner_examples() {
        let i = Matrix::identity(2);
        assert!(loewner_leq(&i, &i.scale(2.0), 1e-10).unwrap());
        assert!(!loewner_leq(&Matrix::from_diag(&[1.0, 3.0]), &Matrix::from_diag(&[2.0, 2.0]), 1e-10)
            .unwrap());
        let a = random_spd(3, 10.0, 9).unwrap();
        assert!(loewner_leq(&a, &a, 0.0).unwrap());
    }

    #[test]
    fn loewner_dimension_mismatch() {
        let err = loewner_leq(&Matrix::identity(2), &Matrix::identity(3), 1e-8).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn spd_rejects_singular_and_indefinite() {
        assert!(matches!(
            SpdMatrix::from_diag(&[1.0, 0.0]),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            SpdMatrix::from_diag(&[1.0, -2.0]),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            SpdMatrix::from_diag(&[1.0, 1e-14]),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn spd_json_rejects_indefinite() {
        let err = serde_json::from_str::<SpdMatrix>(r#"{"n":2,"rows":[[1,0],[0,-1]]}"#);
        assert!(err.is_err());
    }
}
