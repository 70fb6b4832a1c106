//! Integral representations, h-density lattices, φ/γ analysis, the order
//! tests and the Kubo-Ando condition check.

pub mod density;
pub mod integral;
pub mod ka;
pub mod order;
pub mod phi;

pub use density::{h_order, lattice_meet_join, DensityClass, HDensity, HOrder, NULL_MEASURE};
pub use integral::{eval_selfadjoint_rep, eval_symmetric_rep, rep_exponent, DensityFunction};
pub use ka::{ka_condition_check, ka_sweep, ka_tau_family, KaConfig, KaReport, KaViolation};
pub use order::{order_geq_sa, order_leq_sa, order_leq_sym};
pub use phi::{phi_profile, Monotonicity, PhiProfile};
