use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

use super::{Matrix, SpdMatrix};

/// Deterministic SPD test instance: Q diag(λ) Qᵀ with Q Haar-like
/// orthogonal and λ log-uniform in [1, cond_cap].
pub fn random_spd(n: usize, cond_cap: f64, seed: u64) -> Result<SpdMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_spd_with(&mut rng, n, cond_cap)
}

pub fn random_spd_with<R: Rng + ?Sized>(rng: &mut R, n: usize, cond_cap: f64) -> Result<SpdMatrix> {
    if n == 0 {
        return Err(Error::Structural("dimension must be at least 1".into()));
    }
    if !(cond_cap >= 1.0) || !cond_cap.is_finite() {
        return Err(Error::Structural(format!("condition cap must be >= 1, got {cond_cap}")));
    }
    let log_cap = cond_cap.ln();
    let eigenvalues: Vec<f64> = (0..n).map(|_| (rng.random::<f64>() * log_cap).exp()).collect();
    let q = random_orthogonal_with(rng, n);
    Ok(SpdMatrix::from_trusted(Matrix::from_diag(&eigenvalues).congruence(&q)))
}

/// Orthogonal matrix from Gram-Schmidt on a Gaussian matrix (two passes).
pub fn random_orthogonal_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let mut cols: Vec<Vec<f64>> =
            (0..n).map(|_| (0..n).map(|_| rng.sample(StandardNormal)).collect()).collect();
        let mut ok = true;
        for j in 0..n {
            for _ in 0..2 {
                for k in 0..j {
                    let dot: f64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a * b).sum();
                    let (head, tail) = cols.split_at_mut(j);
                    for (x, y) in tail[0].iter_mut().zip(&head[k]) {
                        *x -= dot * y;
                    }
                }
            }
            let norm = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols[j].iter_mut().for_each(|x| *x /= norm);
        }
        if ok {
            return Matrix::from_fn(n, |i, j| cols[j][i]);
        }
    }
}

/// Invertible matrix Q₁ diag(s) Q₂ with singular values log-uniform in [1, cond_cap].
pub fn random_invertible_with<R: Rng + ?Sized>(rng: &mut R, n: usize, cond_cap: f64) -> Matrix {
    let q1 = random_orthogonal_with(rng, n);
    let q2 = random_orthogonal_with(rng, n);
    let log_cap = cond_cap.max(1.0).ln();
    let s: Vec<f64> = (0..n).map(|_| (rng.random::<f64>() * log_cap).exp()).collect();
    q1.matmul(&Matrix::from_diag(&s)).matmul(&q2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_one_is_positive_scalar() {
        let m = random_spd(1, 10.0, 5).unwrap();
        assert_eq!(m.n(), 1);
        assert!(m.get(0, 0) > 0.0);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        assert_eq!(random_spd(4, 100.0, 11).unwrap(), random_spd(4, 100.0, 11).unwrap());
        assert_ne!(random_spd(4, 100.0, 11).unwrap(), random_spd(4, 100.0, 12).unwrap());
    }

    #[test]
    fn condition_cap_respected() {
        for seed in 0..50 {
            let cond = random_spd(4, 100.0, seed).unwrap().condition_number().unwrap();
            assert!(cond <= 100.0 * (1.0 + 1e-10), "seed {seed}: {cond}");
        }
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(random_spd(0, 10.0, 1), Err(Error::Structural(_))));
    }
}
