//! Classical fourth-order Runge-Kutta integration of the von Neumann equation
//! `d rho / ds = -i tau [H(s), rho]`, used as an independent cross-check.
//!
//! The Hamiltonian is applied in structured form (a diagonal plus one bit flip
//! per qubit) and the schedule is evaluated exactly at every stage.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::density::DensityMatrix;
use super::solver::{
    check_time, initial_state, step_segments, Integrator, ReferenceDiagnostics, SimulationResult,
    SolverConfig,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{check_size, ising_diagonal, FieldOffsets, IsingModel};
use crate::linalg::CMatrix;
use crate::schedule::AnnealingSchedule;

struct Structured {
    ising: Vec<f64>,
    dz: Vec<f64>,
    dx: Vec<f64>,
}

impl Structured {
    /// `-i tau [H(s), rho]`
    fn rhs(&self, schedule: &AnnealingSchedule, tau: f64, s: f64, rho: &CMatrix) -> CMatrix {
        let dim = rho.nrows();
        let a = schedule.driver_sign().value() * schedule.a(s);
        let b = schedule.b(s);
        let diag: Vec<f64> = (0..dim)
            .map(|v| {
                let mut d = b * self.ising[v];
                for (k, dz) in self.dz.iter().enumerate() {
                    d += dz * if v >> k & 1 == 0 { 1.0 } else { -1.0 };
                }
                d
            })
            .collect();
        let weights: Vec<f64> = self.dx.iter().map(|dx| a + dx).collect();
        let scale = Complex64::new(0.0, -tau);
        CMatrix::from_fn(dim, dim, |i, j| {
            let mut acc = rho[(i, j)] * (diag[i] - diag[j]);
            for (k, w) in weights.iter().enumerate() {
                let bit = 1 << k;
                acc += (rho[(i ^ bit, j)] - rho[(i, j ^ bit)]) * *w;
            }
            acc * scale
        })
    }
}

/// Runge-Kutta reference run with `n_steps` uniform steps (split at schedule
/// kinks). The final state is renormalised to unit trace; the drift measured
/// before that is reported in [`SimulationResult::diagnostics`].
pub fn simulate_reference_rk(
    model: &IsingModel,
    tau: f64,
    schedule: &AnnealingSchedule,
    n_steps: usize,
    offsets: Option<&FieldOffsets>,
) -> Result<SimulationResult> {
    check_time(tau)?;
    SolverConfig::fixed(4, n_steps).validate()?;
    let n = model.n_qubits();
    check_size(n)?;
    let (dx, dz) = match offsets {
        Some(o) => {
            o.check(n)?;
            (o.x().to_vec(), o.z().to_vec())
        }
        None => (alloc::vec![0.0; n], alloc::vec![0.0; n]),
    };
    let op = Structured {
        ising: ising_diagonal(model)?,
        dz,
        dx,
    };

    let psi = initial_state(n, schedule.initial_state());
    let mut rho = &psi * psi.adjoint();
    for (step, (s0, s1)) in step_segments(n_steps, schedule.kinks())
        .into_iter()
        .enumerate()
    {
        let h = s1 - s0;
        let half = Complex64::new(h / 2.0, 0.0);
        let k1 = op.rhs(schedule, tau, s0, &rho);
        let k2 = op.rhs(schedule, tau, s0 + h / 2.0, &(&rho + &k1 * half));
        let k3 = op.rhs(schedule, tau, s0 + h / 2.0, &(&rho + &k2 * half));
        let k4 = op.rhs(schedule, tau, s1, &(&rho + &k3 * Complex64::new(h, 0.0)));
        rho += (k1 + (k2 + k3) * Complex64::new(2.0, 0.0) + k4) * Complex64::new(h / 6.0, 0.0);
        if rho.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NumericalFailure { step });
        }
    }
    let raw = DensityMatrix::from_matrix(rho);
    let trace = raw.trace();
    let diagnostics = ReferenceDiagnostics {
        trace_drift: (trace - Complex64::new(1.0, 0.0)).norm(),
        purity_drift: (raw.purity() - 1.0).abs(),
    };
    if trace.norm() == 0.0 {
        return Err(Error::NumericalFailure {
            step: n_steps.saturating_sub(1),
        });
    }
    let rho = DensityMatrix::from_matrix(raw.into_matrix().map(|z| z / trace));
    Ok(SimulationResult {
        probabilities: rho.probabilities(),
        rho,
        steps_used: n_steps,
        order: 4,
        convergence_trace: Vec::new(),
        integrator: Integrator::RungeKutta4,
        diagnostics: Some(diagnostics),
    })
}
