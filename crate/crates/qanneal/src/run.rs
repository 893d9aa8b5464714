//! Inline model specs, time lists and parallel sweeps.

use qanneal_core::{
    magnus::logspace, AnnealingSchedule, FieldOffsets, IsingModel, Simulator, SolverConfig, Term,
};
use rayon::prelude::*;

use crate::error::{IoError, Result};
use crate::export::SweepPoint;

/// Parses `1,2=-1;1=0.5` style models: `;`-separated `i=h` fields and
/// `i,j=J` couplings with 1-based qubit indices.
pub fn parse_model_spec(spec: &str) -> Result<IsingModel> {
    let invalid = |m: String| IoError::Validation(m);
    let mut model = IsingModel::new(0);
    for item in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (lhs, rhs) = item
            .split_once('=')
            .ok_or_else(|| invalid(format!("model term `{item}` has no `=`")))?;
        let coeff: f64 = rhs
            .trim()
            .parse()
            .map_err(|_| invalid(format!("model term `{item}`: bad coefficient")))?;
        let indices = lhs
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| invalid(format!("model term `{item}`: bad qubit index")))?;
        model.insert(Term::from_indices(&indices)?, coeff)?;
    }
    if model.n_qubits() == 0 {
        return Err(invalid("model spec contains no terms".into()));
    }
    Ok(model)
}

/// `0.1,1,10` or `logspace:lo:hi:count` (base-10 exponents).
pub fn parse_times(spec: &str) -> Result<Vec<f64>> {
    let invalid = |m: String| IoError::Validation(m);
    if let Some(rest) = spec.strip_prefix("logspace:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(invalid(format!("`{spec}`: expected logspace:lo:hi:count")));
        }
        let lo: f64 = parts[0]
            .parse()
            .map_err(|_| invalid(format!("`{spec}`: bad lo")))?;
        let hi: f64 = parts[1]
            .parse()
            .map_err(|_| invalid(format!("`{spec}`: bad hi")))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| invalid(format!("`{spec}`: bad count")))?;
        if count == 0 || !lo.is_finite() || !hi.is_finite() {
            return Err(invalid(format!("`{spec}`: empty or non-finite range")));
        }
        return Ok(logspace(lo, hi, count));
    }
    let times = parse_list(spec)?;
    if times.is_empty() {
        return Err(invalid("no annealing times given".into()));
    }
    Ok(times)
}

/// Comma-separated reals.
pub fn parse_list(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| IoError::Validation(format!("`{s}` is not a number")))
        })
        .collect()
}

/// Runs every `tau` on up to `jobs` threads (`0` picks automatically).
/// Points come back sorted by `tau`; per-point failures are kept.
pub fn run_sweep(
    model: &IsingModel,
    taus: &[f64],
    schedule: &AnnealingSchedule,
    config: &SolverConfig,
    offsets: Option<&FieldOffsets>,
    jobs: usize,
) -> Result<Vec<SweepPoint>> {
    if taus.is_empty() {
        return Err(IoError::Validation("no annealing times given".into()));
    }
    config.validate()?;
    // validates the problem once; workers build their own copies
    Simulator::new(model, schedule, offsets)?;
    let mut taus = taus.to_vec();
    taus.sort_by(f64::total_cmp);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| IoError::Validation(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        taus.par_iter()
            .map_init(
                || Simulator::new(model, schedule, offsets).expect("validated above"),
                |sim, &tau| SweepPoint {
                    tau,
                    outcome: sim.run(tau, config),
                },
            )
            .collect()
    }))
}
