//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! Each rotation annihilates one off-diagonal pair; sweeps visit every pair
//! in row order. Rotations are accumulated into the eigenvector basis, so
//! `M = U diag(λ) Uᵀ` holds to working precision on exit.

use crate::error::{Error, Result};

use super::matrix::Matrix;

/// Stop once the off-diagonal Frobenius mass falls below this fraction of ‖M‖_F.
pub const OFF_DIAGONAL_TOL: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 30;

/// Eigenvalues (non-ascending) and an orthonormal basis whose columns are
/// the matching eigenvectors.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub basis: Matrix,
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    /// U diag(values) Uᵀ for caller-supplied values in eigenvalue order.
    pub fn compose(&self, values: &[f64]) -> Matrix {
        assert_eq!(values.len(), self.n());
        let n = self.n();
        let u = &self.basis;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for (k, &v) in values.iter().enumerate() {
                    acc += u.get(i, k) * v * u.get(j, k);
                }
                out.set(i, j, acc);
                out.set(j, i, acc);
            }
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix {
        self.compose(&self.eigenvalues)
    }

    /// U diag(g(λ_i)) Uᵀ; fails if g is not finite at some eigenvalue.
    pub fn map(&self, g: impl Fn(f64) -> f64) -> Result<Matrix> {
        let values = self.map_values(g)?;
        Ok(self.compose(&values))
    }

    pub(crate) fn map_values(&self, g: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
        self.eigenvalues
            .iter()
            .map(|&lambda| {
                let v = g(lambda);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::SpectralDomain { eigenvalue: lambda })
                }
            })
            .collect()
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Positive definiteness is not required. Fails on asymmetric input or if
/// the sweep budget runs out.
pub fn sym_eigendecompose(m: &Matrix) -> Result<SpectralDecomposition> {
    m.check_symmetric()?;
    let n = m.n();
    let mut a = m.clone().symmetrize();
    let mut v = Matrix::identity(n);
    let scale = m.frobenius_norm();
    let target = OFF_DIAGONAL_TOL * scale;

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        sweep(&mut a, &mut v);
    }
    if !converged {
        return Err(Error::Convergence(format!(
            "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps (n = {n})"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).total_cmp(&a.get(i, i)));
    let eigenvalues = order.iter().map(|&i| a.get(i, i)).collect();
    let basis = Matrix::from_fn(n, |row, col| v.get(row, order[col]));
    Ok(SpectralDecomposition { eigenvalues, basis })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.n();
    let mut acc = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let x = a.get(i, j);
            acc += 2.0 * x * x;
        }
    }
    acc.sqrt()
}

fn sweep(a: &mut Matrix, v: &mut Matrix) {
    let n = a.n();
    for p in 0..n {
        for q in (p + 1)..n {
            let apq = a.get(p, q);
            if apq == 0.0 {
                continue;
            }
            let app = a.get(p, p);
            let aqq = a.get(q, q);
            let tau = (aqq - app) / (2.0 * apq);
            let t = if tau.is_infinite() {
                // |a_pq| negligible against the diagonal gap
                1.0 / (2.0 * tau)
            } else {
                tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
            };
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;

            a.set(p, p, app - t * apq);
            a.set(q, q, aqq + t * apq);
            a.set(p, q, 0.0);
            a.set(q, p, 0.0);
            for k in 0..n {
                if k == p || k == q {
                    continue;
                }
                let akp = a.get(k, p);
                let akq = a.get(k, q);
                let new_kp = c * akp - s * akq;
                let new_kq = s * akp + c * akq;
                a.set(k, p, new_kp);
                a.set(p, k, new_kp);
                a.set(k, q, new_kq);
                a.set(q, k, new_kq);
            }
            for k in 0..n {
                let vkp = v.get(k, p);
                let vkq = v.get(k, q);
                v.set(k, p, c * vkp - s * vkq);
                v.set(k, q, s * vkp + c * vkq);
            }
        }
    }
}
