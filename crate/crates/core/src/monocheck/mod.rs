//! Operator-monotonicity testing: sampled Loewner matrices, counterexample
//! search through mean inequalities, and the mean inequality chains.

mod chains;
mod loewner;
mod transfer;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::func::ScalarFunction;
use crate::spd::{apply_spectral_function, loewner_leq, Matrix};

pub use chains::{
    mean_sandwich, scalar_heinz_heron_chain, verify_inequality_chain, ChainReport, Inequality,
    ScalarChain,
};
pub use loewner::{is_operator_monotone_sampled, loewner_matrix, MonotoneConfig, NEAR_COLLISION_GAP};
pub use transfer::{falsify_transfer, TransferConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Consistent,
    Refuted,
}

/// Evidence against operator monotonicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A point set whose Loewner matrix has a negative eigenvalue.
    Points { points: Vec<f64>, min_eigenvalue: f64, frobenius_norm: f64 },
    /// `lower ≤ upper` but f(lower) ≰ f(upper); `lower = AσB`, `upper = AτB`.
    MatrixPair { a: Matrix, b: Matrix, lower: Matrix, upper: Matrix, margin: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Worst relative margin seen per sampled size or dimension.
    pub margins: Vec<f64>,
    pub trials_run: usize,
}

impl MonotonicityVerdict {
    pub(crate) fn consistent(margins: Vec<f64>, trials_run: usize) -> Self {
        MonotonicityVerdict { status: Status::Consistent, witness: None, margins, trials_run }
    }

    pub(crate) fn refuted(witness: Witness, margins: Vec<f64>, trials_run: usize) -> Self {
        MonotonicityVerdict { status: Status::Refuted, witness: Some(witness), margins, trials_run }
    }

    pub fn is_consistent(&self) -> bool {
        self.status == Status::Consistent
    }

    /// Recomputes the witness from scratch; true if it still refutes.
    pub fn reverify(&self, f: &dyn ScalarFunction, tol: f64) -> Result<bool> {
        match &self.witness {
            None => Ok(false),
            Some(Witness::Points { points, .. }) => {
                let l = loewner_matrix(f, points)?;
                let min = crate::spd::sym_eigendecompose(&l)?.min_eigenvalue();
                Ok(min < -tol * l.frobenius_norm())
            }
            Some(Witness::MatrixPair { lower, upper, .. }) => {
                if !loewner_leq(lower, upper, tol)? {
                    return Ok(false);
                }
                let fl = apply_spectral_function(lower, |x| f.eval(x))?;
                let fu = apply_spectral_function(upper, |x| f.eval(x))?;
                Ok(!loewner_leq(&fl, &fu, tol)?)
            }
        }
    }
}
