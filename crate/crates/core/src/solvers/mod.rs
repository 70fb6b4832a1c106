//! Constructive inverse problems: matrix pairs realizing prescribed mean
//! values, monotone chains, and the Heinz/Heron constructions.

mod bisect;
mod chain;
mod heinz;
mod pair;

pub use bisect::{bisect, INTERVAL_TOL, MAX_ITERATIONS};
pub use chain::{build_monotone_chain, ChainCheck, ChainWitness, CHAIN_TOL};
pub use heinz::{
    alpha_of, f_alpha, invert_f_alpha, invert_k_s, k_s, solve_geom_heinz_matrix, solve_heinz_heron_matrix,
    solve_scalar_heinz_heron, ScalarPairSolution, ORDER_TOL,
};
pub use pair::{
    invert_phi, solve_matrix_pair, solve_scalar_geometric_pair, PairSolver, PairWitness, SCAN_LIMIT,
    SCAN_PER_DECADE, UNIT_SNAP, WITNESS_TOL,
};
