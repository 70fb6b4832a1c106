//! Worked examples checked against closed forms computed independently here.

use opmean::func::log_grid;
use opmean::means::{eval_mean, verify_mean_axioms, AxiomConfig, MeanDescriptor};
use opmean::monocheck::{falsify_transfer, verify_inequality_chain, TransferConfig};
use opmean::repr::{eval_symmetric_rep, ka_condition_check, phi_profile, rep_exponent, KaConfig};
use opmean::solvers::{
    build_monotone_chain, invert_phi, solve_heinz_heron_matrix, solve_matrix_pair, solve_scalar_geometric_pair,
    solve_scalar_heinz_heron, CHAIN_TOL,
};
use opmean::spd::{random_spd, relative_distance, sym_eigendecompose};
use opmean::{DensityClass, FnScalar, HDensity, Matrix, SpdMatrix};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn eigenvalues_of_two_by_two() {
    // λ² − 4λ + 3 = 0
    let m = Matrix::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
    let mut e = sym_eigendecompose(&m).unwrap().eigenvalues;
    e.sort_by(f64::total_cmp);
    assert!(close(e[0], 1.0, 1e-14) && close(e[1], 3.0, 1e-14), "{e:?}");
}

#[test]
fn half_density_exponent_matches_closed_form() {
    let h = HDensity::constant(DensityClass::Symmetric, 0.5).unwrap();
    for t in log_grid(1e-3, 1e3, 61) {
        let want = (2.0 * t.sqrt() / (1.0 + t)).ln();
        let (got, _) = rep_exponent(&h, t);
        assert!((got - want).abs() <= 1e-12, "t={t}: {got} vs {want}");
        assert!(close(eval_symmetric_rep(&h, t).unwrap(), t.sqrt(), 1e-12));
    }
}

#[test]
fn scalar_pair_quadratic_roots() {
    // ab = 1, a + b = 20
    let (a, b) = solve_scalar_geometric_pair(&MeanDescriptor::Arithmetic, 1.0, 10.0).unwrap();
    let r = 99f64.sqrt();
    assert!(close(a, 10.0 + r, 1e-12) && close(b, 10.0 - r, 1e-12), "{a} {b}");
    let (a, b) = solve_scalar_geometric_pair(&MeanDescriptor::Arithmetic, 1.0, 1.25).unwrap();
    assert!(close(a, 2.0, 1e-13) && close(b, 0.5, 1e-13));
}

#[test]
fn arithmetic_phi_inverse() {
    // (1 + t²)/(2t) = y has roots y ± √(y² − 1)
    let p = phi_profile(&MeanDescriptor::Arithmetic.representing_function().unwrap());
    for y in [1.01f64, 1.25, 3.0, 50.0] {
        let want = y + (y * y - 1.0).sqrt();
        assert!(close(invert_phi(&p, y).unwrap(), want, 1e-12), "y={y}");
    }
}

#[test]
fn heron_half_two_by_two_instance() {
    let x = SpdMatrix::identity(2);
    let y = SpdMatrix::from_diag(&[1.2, 1.05]).unwrap();
    let w = solve_matrix_pair(&MeanDescriptor::Heron(0.5), &x, &y).unwrap();
    assert!(w.within(1e-7));
    let g = eval_mean(&MeanDescriptor::Geometric, &w.a, &w.b).unwrap();
    let h = eval_mean(&MeanDescriptor::Heron(0.5), &w.a, &w.b).unwrap();
    assert!(relative_distance(&g, &x) <= 1e-7 && relative_distance(&h, &y) <= 1e-7);
}

#[test]
fn heinz_heron_mirror_parameters_agree() {
    for ratio in [0.2, 0.5, 0.9, 0.99] {
        let p = solve_scalar_heinz_heron(0.25, ratio, 1.0).unwrap();
        let q = solve_scalar_heinz_heron(0.75, ratio, 1.0).unwrap();
        assert!(close(p.x, q.x, 1e-10) && close(p.y, q.y, 1e-10));
        let heinz = 0.5 * (p.x.powf(0.25) * p.y.powf(0.75) + p.x.powf(0.75) * p.y.powf(0.25));
        let heron = 0.25 * 0.5 * (p.x + p.y) + 0.75 * (p.x * p.y).sqrt();
        assert!(close(heinz / heron, ratio, 1e-10));
    }
}

#[test]
fn heinz_heron_scaled_identity() {
    let r = 0.6;
    let w = solve_heinz_heron_matrix(0.3, &SpdMatrix::scalar(2, r).unwrap(), &SpdMatrix::identity(2)).unwrap();
    assert!(w.within(1e-7));
    let s = solve_scalar_heinz_heron(0.3, r, 1.0).unwrap();
    assert!(close(w.a.get(0, 0), s.x, 1e-10) && close(w.b.get(0, 0), s.y, 1e-10));
    assert!(w.a.get(0, 1).abs() <= 1e-14);
}

#[test]
fn chain_of_scaled_identities() {
    let g0 = 2f64.sqrt();
    let y = SpdMatrix::scalar(2, g0.powf(2.5)).unwrap();
    let c = build_monotone_chain(&MeanDescriptor::Arithmetic, &SpdMatrix::identity(2), &y, Some(g0)).unwrap();
    assert_eq!(c.steps(), 3);
    assert!(c.verify(CHAIN_TOL).unwrap().holds(1e-7));
}

#[test]
fn axiom_harness_examples() {
    let cfg = AxiomConfig::default();
    assert!(verify_mean_axioms(&MeanDescriptor::Geometric, &cfg).unwrap().all_pass());
    let w = verify_mean_axioms(&MeanDescriptor::WeightedGeometric(0.3), &cfg).unwrap();
    assert!(!w.symmetry.pass);
    // t·(1/t)^0.3 − t^0.3 at t = 2
    assert!(w.symmetry.defect >= (2f64.powf(0.7) - 2f64.powf(0.3)).abs() * 0.99);
    assert!(verify_mean_axioms(&MeanDescriptor::Heron(0.5), &cfg).unwrap().normalization.pass);
}

#[test]
fn transfer_search_examples() {
    let cfg = TransferConfig { dims: vec![2], ..Default::default() };
    let (g, a) = (MeanDescriptor::Geometric, MeanDescriptor::Arithmetic);
    let sq = FnScalar::with_deriv(|t| t * t, |t| 2.0 * t);
    let v = falsify_transfer(&sq, &g, &a, &cfg).unwrap();
    assert!(!v.is_consistent() && v.trials_run <= 1000);
    assert!(v.reverify(&sq, 1e-8).unwrap());
    let root = FnScalar::with_deriv(f64::sqrt, |t| 0.5 / t.sqrt());
    assert!(falsify_transfer(&root, &g, &a, &cfg).unwrap().is_consistent());
    assert!(falsify_transfer(&FnScalar::new(|t| t), &g, &a, &cfg).unwrap().is_consistent());
    assert!(falsify_transfer(&root, &a, &g, &cfg).is_err());
}

#[test]
fn ka_geometric_under_arithmetic() {
    let r = ka_condition_check(&MeanDescriptor::Geometric, &MeanDescriptor::Arithmetic, &KaConfig::default()).unwrap();
    assert_eq!((r.trials_run, r.violations), (1000, 0));
}

#[test]
fn commuting_chain_matches_scalar_chain() {
    let a = SpdMatrix::from_diag(&[1.0, 4.0, 0.3]).unwrap();
    let b = SpdMatrix::from_diag(&[9.0, 2.0, 0.3]).unwrap();
    let s = 0.3f64;
    let r = verify_inequality_chain(&a, &b, s, 1e-10).unwrap();
    assert!(r.holds);
    let want = [(1.0f64, 9.0f64), (4.0, 2.0), (0.3, 0.3)]
        .iter()
        .map(|&(x, y)| {
            let heinz = 0.5 * (x.powf(s) * y.powf(1.0 - s) + x.powf(1.0 - s) * y.powf(s));
            let a2 = (2.0 * s - 1.0).powi(2);
            a2 * 0.5 * (x + y) + (1.0 - a2) * (x * y).sqrt() - heinz
        })
        .fold(f64::INFINITY, f64::min);
    assert!((r.scalar_margin.unwrap() - want).abs() <= 1e-14);
    let same = random_spd(3, 50.0, 9).unwrap();
    let tight = verify_inequality_chain(&same, &same, 0.3, 1e-10).unwrap();
    assert!(tight.inequalities.iter().all(|i| i.gap_norm <= 1e-12 * same.frobenius_norm()));
}
