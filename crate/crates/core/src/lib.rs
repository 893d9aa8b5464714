//! Closed-system simulation of transverse field Ising annealing.
//!
//! `H(s) = sign * A(s) * sum_i X_i + B(s) * H_ising (+ per-qubit X and Z offsets)`
//! is evolved from `s = 0` to `s = 1` over annealing time `tau` (with
//! `hbar = 1`) by a Magnus-expansion propagator of order 1 to 8.
//!
//! ```
//! use qanneal_core::{builtin_schedule, simulate, BuiltinSchedule, IsingModel, SolverConfig};
//!
//! let model = IsingModel::five_spin_benchmark();
//! let schedule = builtin_schedule(BuiltinSchedule::Circular);
//! let result = simulate(&model, 1.0, &schedule, &SolverConfig::fixed(4, 50), None).unwrap();
//! let total: f64 = result.probabilities.iter().sum();
//! assert!((total - 1.0).abs() < 1e-12);
//! ```
#![no_std]

extern crate alloc;

pub mod encoding;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod magnus;
pub mod oracle;
pub mod schedule;

pub use encoding::{
    binary_to_braket, binary_to_braket_with, binary_to_int, binary_to_spin, int_to_binary,
    int_to_spin, spin_to_binary, spin_to_braket, spin_to_braket_with, spin_to_int, BinaryVector,
    Glyphs, SpinVector, StateIndex,
};
pub use error::{Error, Result};
pub use hamiltonian::{
    brute_force_ground_states, eigenspectrum, ground_manifold_gap, hamiltonian_at, ising_diagonal,
    unit_grid, FieldOffsets, Gap, GroundStates, HermitianOperator, IsingModel, SpectrumResult,
    Term, MAX_QUBITS,
};
pub use linalg::{CMatrix, CVector};
pub use magnus::{
    build_step_polynomial, error_max, error_mean, exponentiate_omega, omega_explicit4,
    omega_recursive, simulate, simulate_fixed, simulate_reference_rk, simulate_sweep,
    AdaptiveOptions, ConvergenceRecord, DensityMatrix, Integrator, MatrixPolynomial, OmegaTerm,
    SimulationResult, Simulator, SolverConfig, StepControl,
};
pub use oracle::trace_distance;
pub use schedule::{
    builtin_schedule, schedule_from_functions, schedule_from_table, AnnealingSchedule,
    BuiltinSchedule, DriverSign, InitialState, ScheduleSource, ScheduleTable,
};
