use num_complex::Complex64;
use qanneal_core::linalg::max_abs;
use qanneal_core::magnus::{initial_state, ConvergenceRecord};
use qanneal_core::oracle::{model_h1, rho_h1, trace_distance};
use qanneal_core::*;

fn constant_ising() -> AnnealingSchedule {
    schedule_from_functions(|_| 0.0, |_| 1.0, DriverSign::Positive).unwrap()
}

fn exact_constant(model: &IsingModel, tau: f64) -> CMatrix {
    let psi0 = initial_state(model.n_qubits(), InitialState::AllMinus);
    let diag = ising_diagonal(model).unwrap();
    let psi = CVector::from_fn(psi0.len(), |v, _| {
        psi0[v] * Complex64::new(0.0, -tau * diag[v]).exp()
    });
    &psi * psi.adjoint()
}

fn assert_valid(result: &SimulationResult) {
    let total: f64 = result.probabilities.iter().sum();
    assert!((total - 1.0).abs() < 1e-10);
    assert!(result.probabilities.iter().all(|&p| p >= -1e-10));
    assert!((result.rho.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn step_polynomial_for_constant_schedule() {
    let model = IsingModel::five_spin_benchmark();
    let p = build_step_polynomial(&model, &constant_ising(), None, 2.0, 0.5, 0.75).unwrap();
    let diag = ising_diagonal(&model).unwrap();
    for (v, &e) in diag.iter().enumerate() {
        let want = Complex64::new(0.0, -0.25 * e);
        assert!((p.coeffs[0][(v, v)] - want).norm() < 1e-15);
    }
    assert!(max_abs(&p.coeffs[1]) < 1e-15 && max_abs(&p.coeffs[2]) < 1e-15);
}

#[test]
fn step_polynomial_for_linear_schedule() {
    let model = IsingModel::five_spin_benchmark();
    let sched = builtin_schedule(BuiltinSchedule::Linear);
    let p = build_step_polynomial(&model, &sched, None, 4.0, 1.0, 3.0).unwrap();
    assert!(max_abs(&p.coeffs[2]) < 1e-14);
    let h0 = hamiltonian_at(&model, &sched, 0.25, None).unwrap();
    let h1 = hamiltonian_at(&model, &sched, 0.75, None).unwrap();
    let alpha = Complex64::new(0.0, -2.0);
    assert!(max_abs(&(&p.coeffs[0] - h0.matrix() * alpha)) < 1e-14);
    assert!(max_abs(&(&p.coeffs[1] - (h1.matrix() - h0.matrix()) * alpha)) < 1e-14);
}

#[test]
fn step_polynomial_fit_residual_is_small() {
    let model = IsingModel::five_spin_benchmark();
    let sched = builtin_schedule(BuiltinSchedule::Circular);
    let (tau, t0, t1) = (3.0, 1.2, 1.23);
    let p = build_step_polynomial(&model, &sched, None, tau, t0, t1).unwrap();
    let alpha = Complex64::new(0.0, -(t1 - t0));
    let norm = max_abs(hamiltonian_at(&model, &sched, 0.5, None).unwrap().matrix());
    for &u in &[0.1, 0.3, 0.77, 0.95] {
        let fitted = p
            .coeffs
            .iter()
            .rev()
            .fold(CMatrix::zeros(32, 32), |acc, c| {
                acc * Complex64::new(u, 0.0) + c
            });
        let exact = hamiltonian_at(&model, &sched, (t0 + u * (t1 - t0)) / tau, None).unwrap();
        assert!(max_abs(&(fitted - exact.matrix() * alpha)) <= 1e-7 * norm * (t1 - t0));
    }
}

#[test]
fn step_polynomial_rejects_bad_window() {
    let model = model_h1();
    let sched = builtin_schedule(BuiltinSchedule::Linear);
    assert!(build_step_polynomial(&model, &sched, None, 1.0, 0.5, 0.5).is_err());
    assert!(build_step_polynomial(&model, &sched, None, 1.0, 0.5, 1.5).is_err());
}

#[test]
fn constant_schedule_is_exact_at_first_order() {
    let model = IsingModel::five_spin_benchmark();
    let exact = exact_constant(&model, 1.7);
    for n in [1, 3, 10] {
        let r = simulate_fixed(&model, 1.7, &constant_ising(), 1, n, None).unwrap();
        assert!(max_abs(&(r.rho.matrix() - &exact)) < 1e-12);
    }
}

#[test]
fn trace_and_purity_hold_at_any_step_count() {
    let model = IsingModel::five_spin_benchmark();
    for sched in BuiltinSchedule::ALL.map(builtin_schedule) {
        for (order, n) in [(1, 1), (2, 3), (4, 7), (6, 2), (8, 1)] {
            let r = simulate_fixed(&model, 20.0, &sched, order, n, None).unwrap();
            assert_valid(&r);
            assert!((r.rho.purity() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn analytic_single_qubit_at_ten_thousand_steps() {
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    let r = simulate_fixed(&model_h1(), 100.0, &circ, 4, 10_000, None).unwrap();
    let d = trace_distance(r.rho.matrix(), rho_h1(1.0, 100.0).unwrap().matrix()).unwrap();
    assert!(d <= 1e-10, "{d}");
}

#[test]
fn oracle_distance_decreases_until_floor() {
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    let target = rho_h1(1.0, 5.0).unwrap();
    let mut prev = f64::INFINITY;
    for k in 2..10 {
        let r = simulate_fixed(&model_h1(), 5.0, &circ, 4, 1 << k, None).unwrap();
        let d = trace_distance(r.rho.matrix(), target.matrix()).unwrap();
        assert!(d <= prev + 1e-13, "n = {}", 1 << k);
        prev = d;
    }
}

#[test]
fn recursive_path_matches_explicit_path() {
    let model = IsingModel::five_spin_benchmark();
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    let a = simulate_fixed(&model, 3.0, &circ, 4, 50, None).unwrap();
    let b = simulate_fixed(&model, 3.0, &circ, 5, 50, None).unwrap();
    assert!(trace_distance(a.rho.matrix(), b.rho.matrix()).unwrap() < 1e-6);
}

#[test]
fn adaptive_time_independent_converges_immediately() {
    let model = IsingModel::five_spin_benchmark();
    let r = simulate(
        &model,
        2.0,
        &constant_ising(),
        &SolverConfig::default(),
        None,
    )
    .unwrap();
    assert_eq!(r.convergence_trace.len(), 1);
    let rec = r.convergence_trace[0];
    assert!(rec.error_max < 1e-12 && rec.error_mean < 1e-12);
    assert_eq!(r.steps_used, 4);
}

#[test]
fn adaptive_reports_non_convergence() {
    let model = IsingModel::five_spin_benchmark();
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    let options = AdaptiveOptions {
        mean_tol: 1e-30,
        max_tol: 1e-30,
        max_doublings: 3,
        ..Default::default()
    };
    match simulate(
        &model,
        5.0,
        &circ,
        &SolverConfig::adaptive(4, options),
        None,
    ) {
        Err(Error::NonConvergence { trace }) => {
            let steps: Vec<usize> = trace
                .iter()
                .map(|r: &ConvergenceRecord| r.n_steps)
                .collect();
            assert_eq!(steps, vec![4, 8, 16]);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn adaptive_matches_high_resolution_baseline() {
    let model = IsingModel::five_spin_benchmark();
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    let r = simulate(&model, 100.0, &circ, &SolverConfig::default(), None).unwrap();
    let base = simulate_fixed(&model, 100.0, &circ, 4, 20_000, None).unwrap();
    let worst = r
        .probabilities
        .iter()
        .zip(&base.probabilities)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(worst <= 1e-6, "{worst}");
    assert_eq!(r.steps_used, r.convergence_trace.last().unwrap().n_steps);
}

#[test]
fn sweep_preserves_order_and_isolates_failures() {
    let model = IsingModel::five_spin_benchmark();
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    let config = SolverConfig::fixed(4, 20);
    let out = simulate_sweep(&model, &[0.5, -1.0, 2.0], &circ, &config, None).unwrap();
    assert_eq!(out.len(), 3);
    assert_eq!(out[1].as_ref().unwrap_err(), &Error::InvalidTime(-1.0));
    let single = simulate(&model, 2.0, &circ, &config, None).unwrap();
    assert_eq!(out[2].as_ref().unwrap().rho, single.rho);
    assert!(simulate_sweep(&model, &[], &circ, &config, None).is_err());
}

#[test]
fn negative_driver_starts_in_plus_state() {
    let model = model_h1();
    let sched = builtin_schedule(BuiltinSchedule::Circular).with_driver_sign(DriverSign::Negative);
    let r = simulate_fixed(&model, 0.0, &sched, 4, 3, None).unwrap();
    let plus = CMatrix::from_element(2, 2, Complex64::new(0.5, 0.0));
    assert!(max_abs(&(r.rho.matrix() - plus)) < 1e-15);
}

#[test]
fn zero_time_keeps_uniform_probabilities() {
    let model = IsingModel::five_spin_benchmark();
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    let r = simulate_fixed(&model, 0.0, &circ, 4, 5, None).unwrap();
    assert!(r
        .probabilities
        .iter()
        .all(|p| (p - 1.0 / 32.0).abs() < 1e-12));
}

#[test]
fn dw_quadratic_steps_are_split_at_kink() {
    let model = IsingModel::five_spin_benchmark();
    let dw = builtin_schedule(BuiltinSchedule::DwQuadratic).with_driver_sign(DriverSign::Negative);
    let fine = simulate_fixed(&model, 0.5, &dw, 4, 4000, None).unwrap();
    let coarse = simulate_fixed(&model, 0.5, &dw, 4, 40, None).unwrap();
    assert_valid(&coarse);
    assert!(trace_distance(fine.rho.matrix(), coarse.rho.matrix()).unwrap() < 1e-5);
}

#[test]
fn offsets_enter_the_propagator() {
    let model = model_h1();
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    let off = FieldOffsets::new(vec![0.2], vec![-0.3]).unwrap();
    let with = simulate_fixed(&model, 4.0, &circ, 4, 400, Some(&off)).unwrap();
    let rk = simulate_reference_rk(&model, 4.0, &circ, 4000, Some(&off)).unwrap();
    assert!(trace_distance(with.rho.matrix(), rk.rho.matrix()).unwrap() < 1e-9);
    let without = simulate_fixed(&model, 4.0, &circ, 4, 400, None).unwrap();
    assert!(trace_distance(with.rho.matrix(), without.rho.matrix()).unwrap() > 1e-3);
    let bad = FieldOffsets::new(vec![0.0; 2], vec![0.0; 2]).unwrap();
    assert!(simulate_fixed(&model, 1.0, &circ, 4, 4, Some(&bad)).is_err());
}

#[test]
fn non_finite_schedule_is_reported_with_step() {
    let sched = schedule_from_functions(
        |s| {
            if (0.33..0.37).contains(&s) {
                f64::NAN
            } else {
                1.0 - s
            }
        },
        |s| s,
        DriverSign::Positive,
    )
    .unwrap();
    let err = simulate_fixed(&model_h1(), 1.0, &sched, 4, 10, None).unwrap_err();
    assert_eq!(err, Error::NumericalFailure { step: 3 });
}

#[test]
fn invalid_configuration_is_rejected() {
    let model = model_h1();
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    assert_eq!(
        simulate_fixed(&model, 1.0, &circ, 4, 0, None).unwrap_err(),
        Error::InvalidConfig("n_steps must be at least 1")
    );
    assert_eq!(
        simulate_fixed(&model, 1.0, &circ, 9, 4, None).unwrap_err(),
        Error::OrderOutOfRange(9)
    );
    assert_eq!(
        simulate_fixed(&model, f64::NAN, &circ, 4, 4, None)
            .unwrap_err()
            .to_string(),
        Error::InvalidTime(f64::NAN).to_string()
    );
}

#[test]
fn reference_matches_exact_conjugation() {
    let model = IsingModel::five_spin_benchmark();
    let r = simulate_reference_rk(&model, 1.3, &constant_ising(), 2000, None).unwrap();
    assert!(max_abs(&(r.rho.matrix() - exact_constant(&model, 1.3))) < 1e-8);
    assert_eq!(r.integrator, Integrator::RungeKutta4);
}

#[test]
fn reference_reports_drift_when_under_resolved() {
    let model = IsingModel::five_spin_benchmark();
    let circ = builtin_schedule(BuiltinSchedule::Circular);
    let r = simulate_reference_rk(&model, 100.0, &circ, 1, None).unwrap();
    let diag = r.diagnostics.unwrap();
    assert!(diag.purity_drift > 1.0, "{diag:?}");
    assert!((r.rho.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn error_metric_examples() {
    let a = CMatrix::zeros(2, 2);
    let mut b = a.clone();
    b[(0, 1)] = Complex64::new(0.1, 0.0);
    assert_eq!(error_max(&a, &a).unwrap(), 0.0);
    assert!((error_max(&a, &b).unwrap() - 0.1).abs() < 1e-17);
    assert!((error_mean(&a, &b).unwrap() - 0.025).abs() < 1e-17);
    assert!(error_max(&a, &CMatrix::zeros(4, 4)).is_err());
}
