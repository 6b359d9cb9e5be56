use mctele::optimality::{
    equality_residual, evaluate_perturbation, haar_moment_check, lemma5_coefficients,
    lemma5_report, objective, perturbation_falsifier, reduced_optimum, ProgramData,
};
use mctele::symgroup::Partition;
use mctele::teleport::{build_measurement, success_probability_formula};
use mctele::tensor::{max_entangled_state, Operator, SubsystemLayout};
use mctele::Error;

#[test]
fn haar_moments() {
    let r = haar_moment_check(1, 2, 10, 1).unwrap();
    assert!(r.exact_residual < 1e-15);
    let r = haar_moment_check(2, 2, 10_000, 2).unwrap();
    assert!(r.monte_carlo_residual <= 0.05, "{}", r.monte_carlo_residual);
    let r = haar_moment_check(3, 3, 10, 3).unwrap();
    assert!(r.exact_residual <= 1e-12);
}

#[test]
fn haar_moment_residual_shrinks() {
    let small = haar_moment_check(2, 2, 100, 9)
        .unwrap()
        .monte_carlo_residual;
    let large = haar_moment_check(2, 2, 10_000, 9)
        .unwrap()
        .monte_carlo_residual;
    assert!(large < small);
}

#[test]
fn objective_values() {
    let layout = SubsystemLayout::uniform(2, 3);
    assert_eq!(
        objective(&Operator::zeros(layout.clone()), 2, 2).unwrap(),
        0.0
    );
    let m = build_measurement(2, 2).unwrap();
    assert!((objective(&m.m, 2, 2).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    // (1/d) tr(P^sym ⊗ 1)/m = (1/2)(3·2)/3 = 1
    assert!((objective(&Operator::identity(layout), 2, 2).unwrap() - 1.0).abs() < 1e-12);
    assert!(matches!(
        objective(&Operator::identity(SubsystemLayout::uniform(2, 2)), 2, 2),
        Err(Error::LayoutMismatch(..))
    ));
}

#[test]
fn equality_residuals() {
    for (d, k) in [(2, 2), (2, 3), (3, 2)] {
        let m = build_measurement(d, k).unwrap();
        assert!(equality_residual(&m.m, d, k).unwrap() <= 1e-11);
    }
    assert_eq!(
        equality_residual(&Operator::zeros(SubsystemLayout::uniform(2, 3)), 2, 2).unwrap(),
        0.0
    );
    // Bell measurement on the last copy alone is ordinary teleportation
    // without correction: success 1/d² for every input, so it is feasible.
    let naive = Operator::identity(SubsystemLayout::single(2))
        .kron(&max_entangled_state(2).unwrap().projector())
        .unwrap();
    assert!(equality_residual(&naive, 2, 2).unwrap() <= 1e-12);
    assert!((objective(&naive, 2, 2).unwrap() - 0.25).abs() < 1e-12);
    // the whole symmetric block is not: gap = tr(P^sym⊗1)/m_k − tr(X)/m_{k+1} = 2 − 1
    let psym = ProgramData::new(2, 2).unwrap().psym;
    assert!((equality_residual(&psym, 2, 2).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn lemma5_values() {
    for (d, k, c1, c2) in [
        (2, 1, 1.5, 0.5),
        (2, 2, 4.0 / 3.0, 1.0 / 3.0),
        (3, 2, 5.0 / 3.0, 1.0 / 3.0),
    ] {
        let r = lemma5_coefficients(d, k, 1e-10).unwrap();
        assert!((r.c1 - c1).abs() < 1e-12 && (r.c2 - c2).abs() < 1e-12);
        assert!(r.off_support < 1e-12);
        assert!((r.c1_as_stated - r.c1_expected).abs() > 0.1);
    }
    assert!(lemma5_report(1, 2).is_err());
}

#[test]
fn multiplicity_ratio_identity() {
    for k in 1..=10 {
        for d in 1..=6 {
            let lhs = Partition::row(k - 1).mult_semistandard(d) as f64
                / Partition::row(k).mult_semistandard(d) as f64;
            assert!((lhs - k as f64 / (k - 1 + d) as f64).abs() < 1e-14);
        }
    }
}

#[test]
fn trace_identities_of_the_constraint() {
    // tr(X F)/m_{k+1} = k/(k−1+d), the a1 coefficient on both sides
    for (d, k) in [(2, 2), (3, 2), (2, 3)] {
        let data = ProgramData::new(d, k).unwrap();
        let lhs = data.x.trace_product(&data.f).re / data.m_k1;
        assert!((lhs - k as f64 / (k - 1 + d) as f64).abs() < 1e-12);
        let rhs = data.psym.trace_product(&data.f).re / data.m_k;
        assert!((rhs - k as f64 / (k - 1 + d) as f64).abs() < 1e-12);
        assert!(data.f.try_matmul(&data.ps).unwrap().frobenius_norm() < 1e-12);
        assert!(data.ps.projector_defect() < 1e-12);
    }
}

#[test]
fn optimum_of_reduced_family() {
    for (d, k) in [(2, 2), (3, 3), (2, 1), (3, 2)] {
        let r = reduced_optimum(d, k).unwrap();
        assert_eq!((r.a1, r.a2), (1.0, 0.0));
        assert!((r.p_star - success_probability_formula(d, k)).abs() < 1e-12);
        assert!((r.grid_p - r.p_star).abs() <= 1e-6);
        assert!(r.equality_residual < 1e-12);
        assert!(r.permutation_covariance < 1e-12 && r.unitary_covariance < 1e-9);
        assert!(r.measurement_residual < 1e-10);
    }
    assert!((reduced_optimum(3, 3).unwrap().p_star - 0.2).abs() < 1e-12);
    let single = reduced_optimum(2, 1).unwrap();
    assert!((single.p_star - 0.25).abs() < 1e-12);
}

#[test]
fn optimal_measurement_equals_f_projector() {
    for (d, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let data = ProgramData::new(d, k).unwrap();
        let m = build_measurement(d, k).unwrap();
        assert!(data.f.distance(&m.m) <= 1e-10, "d={d} k={k}");
    }
}

#[test]
fn trivial_dimension_optimum() {
    let r = reduced_optimum(1, 3).unwrap();
    assert!((r.p_star - 1.0).abs() < 1e-12);
    assert_eq!(r.a2, 0.0);
}

#[test]
fn zero_perturbation_is_optimal() {
    for (d, k) in [(2, 2), (3, 2)] {
        let data = ProgramData::new(d, k).unwrap();
        let c = evaluate_perturbation(&data, 0.0, 20, 4).unwrap();
        assert!((c.objective - success_probability_formula(d, k)).abs() < 1e-12);
        assert!(c.gap.abs() < 1e-12);
    }
}

#[test]
fn repaired_candidates_are_feasible() {
    let data = ProgramData::new(2, 2).unwrap();
    for s in 0..10 {
        let c = evaluate_perturbation(&data, 0.5, 50, s).unwrap();
        assert!(c.gap.abs() <= 1e-12);
        assert!(c.min_eigenvalue >= -1e-12 && c.max_eigenvalue <= 1.0 + 1e-12);
        assert!(c.objective <= 1.0 / 3.0 + 1e-7);
    }
}

#[test]
fn falsifier_finds_nothing() {
    let r = perturbation_falsifier(2, 2, 200, 1).unwrap();
    assert!(r.max_objective <= 1.0 / 3.0 + 1e-7);
    let r = perturbation_falsifier(3, 2, 100, 2).unwrap();
    assert!(r.max_objective <= 1.0 / 6.0 + 1e-7);
}
