//! Fixed-step and step-doubling drivers for the Magnus propagator.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math on no_std
use num_traits::Float;

use super::algebra::{GeneratorAlgebra, LieAlgebra, LieCombination, Polynomial};
use super::density::{error_max, error_mean, DensityMatrix};
use super::explicit::explicit_terms;
use super::expm::UnitaryFactor;
use super::recursive::{recursive_terms, MAX_ORDER};
use crate::error::{Error, Result};
use crate::hamiltonian::{
    check_size, ising_diagonal, offset_matrix, transverse_matrix_real, FieldOffsets, IsingModel,
};
use crate::linalg::{c, CMatrix, CVector};
use crate::schedule::{unit_quadratic_fit, AnnealingSchedule, InitialState};

pub type MatrixPolynomial = Polynomial<CMatrix>;

pub const DEFAULT_ORDER: usize = 4;

/// Step-doubling parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub initial_steps: usize,
    pub mean_tol: f64,
    pub max_tol: f64,
    pub max_doublings: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        AdaptiveOptions {
            initial_steps: 2,
            mean_tol: 1e-6,
            max_tol: 1e-4,
            max_doublings: 24,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepControl {
    Fixed(usize),
    Adaptive(AdaptiveOptions),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub order: usize,
    pub steps: StepControl,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            order: DEFAULT_ORDER,
            steps: StepControl::Adaptive(AdaptiveOptions::default()),
        }
    }
}

impl SolverConfig {
    pub fn fixed(order: usize, n_steps: usize) -> Self {
        SolverConfig {
            order,
            steps: StepControl::Fixed(n_steps),
        }
    }

    pub fn adaptive(order: usize, options: AdaptiveOptions) -> Self {
        SolverConfig {
            order,
            steps: StepControl::Adaptive(options),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_ORDER).contains(&self.order) {
            return Err(Error::OrderOutOfRange(self.order));
        }
        match self.steps {
            StepControl::Fixed(0) => Err(Error::InvalidConfig("n_steps must be at least 1")),
            StepControl::Fixed(_) => Ok(()),
            StepControl::Adaptive(o) => {
                if o.initial_steps == 0 {
                    return Err(Error::InvalidConfig("initial_steps must be at least 1"));
                }
                if !(o.mean_tol > 0.0 && o.max_tol > 0.0) {
                    return Err(Error::InvalidConfig("tolerances must be positive"));
                }
                Ok(())
            }
        }
    }
}

/// Element-wise change between two successive step-doubling results.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRecord {
    pub n_steps: usize,
    pub error_max: f64,
    pub error_mean: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    Magnus,
    RungeKutta4,
}

/// Drift of conserved quantities reported by the Runge-Kutta reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceDiagnostics {
    /// `|tr(rho) - 1|` before renormalisation.
    pub trace_drift: f64,
    /// `|tr(rho^2) - 1|` before renormalisation.
    pub purity_drift: f64,
}

#[derive(Debug, Clone)]
pub struct SimulationResult {
    pub rho: DensityMatrix,
    pub probabilities: Vec<f64>,
    pub steps_used: usize,
    pub order: usize,
    pub convergence_trace: Vec<ConvergenceRecord>,
    pub integrator: Integrator,
    pub diagnostics: Option<ReferenceDiagnostics>,
}

/// `|-...->` or `|+...+>` on `n` qubits.
pub fn initial_state(n: usize, kind: InitialState) -> CVector {
    let dim = 1usize << n;
    let amp = (dim as f64).sqrt().recip();
    CVector::from_fn(dim, |v, _| match kind {
        InitialState::AllPlus => c(amp),
        InitialState::AllMinus => {
            if v.count_ones() % 2 == 0 {
                c(amp)
            } else {
                c(-amp)
            }
        }
    })
}

pub(crate) fn check_time(tau: f64) -> Result<()> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::InvalidTime(tau));
    }
    Ok(())
}

/// Uniform grid of `n_steps` intervals on `[0, 1]`, with intervals that
/// straddle a kink split in two.
pub(crate) fn step_segments(n_steps: usize, kinks: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n_steps + kinks.len());
    let n = n_steps as f64;
    for i in 0..n_steps {
        let s0 = i as f64 / n;
        let s1 = (i + 1) as f64 / n;
        let mut left = s0;
        for &k in kinks.iter().filter(|&&k| k > s0 && k < s1) {
            out.push((left, k));
            left = k;
        }
        out.push((left, s1));
    }
    out
}

/// Propagator for one (model, schedule, offsets) triple. Commutators of the
/// driver, Ising and offset generators are cached across steps and runs.
pub struct Simulator {
    n_qubits: usize,
    schedule: AnnealingSchedule,
    algebra: GeneratorAlgebra,
    driver: LieCombination,
    ising: LieCombination,
    offsets: Option<LieCombination>,
}

impl Simulator {
    pub fn new(
        model: &IsingModel,
        schedule: &AnnealingSchedule,
        offsets: Option<&FieldOffsets>,
    ) -> Result<Self> {
        let n = model.n_qubits();
        check_size(n)?;
        let x = transverse_matrix_real(n)?.map(c);
        let z = CMatrix::from_diagonal(&CVector::from_vec(
            ising_diagonal(model)?.into_iter().map(c).collect(),
        ));
        let mut generators = vec![x, z];
        if let Some(off) = offsets {
            off.check(n)?;
            if !off.is_zero() {
                generators.push(offset_matrix(off)?.map(c));
            }
        }
        let has_offsets = generators.len() == 3;
        let algebra = GeneratorAlgebra::new(generators);
        let driver = algebra.generator(0);
        let ising = algebra.generator(1);
        let offsets = has_offsets.then(|| algebra.generator(2));
        Ok(Simulator {
            n_qubits: n,
            schedule: schedule.clone(),
            algebra,
            driver,
            ising,
            offsets,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn schedule(&self) -> &AnnealingSchedule {
        &self.schedule
    }

    /// Coefficients of `-i tau (s1 - s0) H(s0 + (s1 - s0) u)` in `u`, with the
    /// schedule replaced by its quadratic interpolant on the step.
    fn step_coefficients(&self, tau: f64, s0: f64, s1: f64) -> Vec<LieCombination> {
        let alpha = Complex64::new(0.0, -tau * (s1 - s0));
        let sign = self.schedule.driver_sign().value();
        let fa = unit_quadratic_fit(&|s| self.schedule.a(s), s0, s1);
        let fb = unit_quadratic_fit(&|s| self.schedule.b(s), s0, s1);
        (0..3)
            .map(|m| {
                let mut h = self.algebra.zero();
                self.algebra
                    .axpy(&mut h, alpha * sign * fa[m], &self.driver);
                self.algebra.axpy(&mut h, alpha * fb[m], &self.ising);
                if let (0, Some(off)) = (m, &self.offsets) {
                    self.algebra.axpy(&mut h, alpha, off);
                }
                h
            })
            .collect()
    }

    fn step_omega(&self, tau: f64, s0: f64, s1: f64, order: usize) -> Result<LieCombination> {
        let coeffs = self.step_coefficients(tau, s0, s1);
        let terms = if order <= 4 {
            explicit_terms(&self.algebra, &coeffs, order)?
        } else {
            recursive_terms(&self.algebra, &coeffs, order)?
        };
        let mut omega = self.algebra.zero();
        for t in &terms {
            self.algebra.axpy(&mut omega, Complex64::new(1.0, 0.0), t);
        }
        Ok(omega)
    }

    /// Final state vector after `n_steps` uniform steps.
    pub fn evolve_state(&self, tau: f64, order: usize, n_steps: usize) -> Result<CVector> {
        check_time(tau)?;
        SolverConfig::fixed(order, n_steps).validate()?;
        let mut psi = initial_state(self.n_qubits, self.schedule.initial_state());
        for (step, (s0, s1)) in step_segments(n_steps, self.schedule.kinks())
            .into_iter()
            .enumerate()
        {
            let omega = self.step_omega(tau, s0, s1, order)?;
            if omega.is_zero() {
                continue;
            }
            let dense = self.algebra.evaluate(&omega);
            if dense
                .iter()
                .any(|z| !(z.re.is_finite() && z.im.is_finite()))
            {
                return Err(Error::NumericalFailure { step });
            }
            psi = UnitaryFactor::new(&dense)?.apply(&psi);
        }
        Ok(psi)
    }

    pub fn run_fixed(&self, tau: f64, order: usize, n_steps: usize) -> Result<SimulationResult> {
        let psi = self.evolve_state(tau, order, n_steps)?;
        Ok(SimulationResult {
            rho: DensityMatrix::from_pure_state(&psi),
            probabilities: psi.iter().map(|z| z.norm_sqr()).collect(),
            steps_used: n_steps,
            order,
            convergence_trace: Vec::new(),
            integrator: Integrator::Magnus,
            diagnostics: None,
        })
    }

    pub fn run_adaptive(
        &self,
        tau: f64,
        order: usize,
        options: &AdaptiveOptions,
    ) -> Result<SimulationResult> {
        SolverConfig::adaptive(order, *options).validate()?;
        let mut n = options.initial_steps;
        let mut prev = self.run_fixed(tau, order, n)?;
        let mut trace = Vec::new();
        for _ in 0..options.max_doublings {
            n *= 2;
            let mut cur = self.run_fixed(tau, order, n)?;
            let record = ConvergenceRecord {
                n_steps: n,
                error_max: error_max(prev.rho.matrix(), cur.rho.matrix())?,
                error_mean: error_mean(prev.rho.matrix(), cur.rho.matrix())?,
            };
            trace.push(record);
            if record.error_max <= options.max_tol && record.error_mean <= options.mean_tol {
                cur.convergence_trace = trace;
                return Ok(cur);
            }
            prev = cur;
        }
        Err(Error::NonConvergence { trace })
    }

    pub fn run(&self, tau: f64, config: &SolverConfig) -> Result<SimulationResult> {
        config.validate()?;
        match config.steps {
            StepControl::Fixed(n) => self.run_fixed(tau, config.order, n),
            StepControl::Adaptive(o) => self.run_adaptive(tau, config.order, &o),
        }
    }
}

/// Dense local generator on the time window `[t0, t1]`, as a polynomial in
/// the rescaled variable `u in [0, 1]`.
pub fn build_step_polynomial(
    model: &IsingModel,
    schedule: &AnnealingSchedule,
    offsets: Option<&FieldOffsets>,
    tau: f64,
    t0: f64,
    t1: f64,
) -> Result<MatrixPolynomial> {
    check_time(tau)?;
    if !(0.0 <= t0 && t0 < t1 && t1 <= tau) {
        return Err(Error::InvalidConfig(
            "step window must satisfy 0 <= t0 < t1 <= tau",
        ));
    }
    let n = model.n_qubits();
    let x = transverse_matrix_real(n)?;
    let z = ising_diagonal(model)?;
    let off = match offsets {
        Some(o) => {
            o.check(n)?;
            Some(offset_matrix(o)?)
        }
        None => None,
    };
    let (s0, s1) = (t0 / tau, t1 / tau);
    let fa = unit_quadratic_fit(&|s| schedule.a(s), s0, s1);
    let fb = unit_quadratic_fit(&|s| schedule.b(s), s0, s1);
    let alpha = Complex64::new(0.0, -(t1 - t0));
    let sign = schedule.driver_sign().value();
    let coeffs = (0..3)
        .map(|m| {
            let mut h = &x * (sign * fa[m]);
            for (v, e) in z.iter().enumerate() {
                h[(v, v)] += fb[m] * e;
            }
            if let (0, Some(o)) = (m, &off) {
                h += o;
            }
            h.map(|r| alpha * r)
        })
        .collect();
    Ok(Polynomial::new(coeffs))
}

pub fn simulate_fixed(
    model: &IsingModel,
    tau: f64,
    schedule: &AnnealingSchedule,
    order: usize,
    n_steps: usize,
    offsets: Option<&FieldOffsets>,
) -> Result<SimulationResult> {
    Simulator::new(model, schedule, offsets)?.run_fixed(tau, order, n_steps)
}

/// Step-doubling simulation (or a fixed run when `config` asks for one).
pub fn simulate(
    model: &IsingModel,
    tau: f64,
    schedule: &AnnealingSchedule,
    config: &SolverConfig,
    offsets: Option<&FieldOffsets>,
) -> Result<SimulationResult> {
    Simulator::new(model, schedule, offsets)?.run(tau, config)
}

/// One independent simulation per annealing time, in input order. A failing
/// time does not abort the others.
pub fn simulate_sweep(
    model: &IsingModel,
    taus: &[f64],
    schedule: &AnnealingSchedule,
    config: &SolverConfig,
    offsets: Option<&FieldOffsets>,
) -> Result<Vec<Result<SimulationResult>>> {
    if taus.is_empty() {
        return Err(Error::InvalidConfig(
            "sweep needs at least one annealing time",
        ));
    }
    let sim = Simulator::new(model, schedule, offsets)?;
    Ok(taus
        .iter()
        .map(|&tau| {
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(Error::InvalidTime(tau));
            }
            sim.run(tau, config)
        })
        .collect())
}

/// `count` log-spaced points from `10^lo` to `10^hi`.
pub fn logspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![10f64.powf(lo)],
        _ => (0..count)
            .map(|k| 10f64.powf(lo + (hi - lo) * k as f64 / (count - 1) as f64))
            .collect(),
    }
}
