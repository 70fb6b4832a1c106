//! Kubo-Ando operator means on symmetric positive-definite matrices.
//!
//! - [`spd`]: Jacobi eigendecomposition, spectral calculus, Loewner order.
//! - [`means`]: the mean catalog and `AσB = A^{1/2} f(A^{-1/2}BA^{-1/2}) A^{1/2}`.
//! - [`repr`]: integral representations by h-densities, φ/γ analysis, order tests.
//! - [`solvers`]: matrix pairs and chains realizing prescribed mean values.
//! - [`monocheck`]: sampled operator-monotonicity tests and inequality chains.

pub mod error;
pub mod func;
pub mod io;
pub mod means;
pub mod monocheck;
pub mod quadrature;
pub mod repr;
pub mod solvers;
pub mod spd;

pub use error::{Error, Result};
pub use func::{FnScalar, ScalarFunction};
pub use means::{eval_mean, eval_mean_with, MeanDescriptor, RepresentingFunction, SymmetryClass};
pub use monocheck::{MonotonicityVerdict, Status, Witness};
pub use repr::{DensityClass, HDensity, HOrder, PhiProfile};
pub use solvers::{ChainWitness, PairWitness, ScalarPairSolution};
pub use spd::{loewner_leq, Matrix, SpdMatrix, SpectralDecomposition};
