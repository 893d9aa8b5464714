use alloc::string::String;
use alloc::vec::Vec;

use crate::magnus::ConvergenceRecord;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the simulator core.
///
/// Qubit indices and vector positions are always reported 1-based.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid bit {value} at position {position} (expected 0 or 1)")]
    InvalidBit { position: usize, value: i64 },
    #[error("invalid spin {value} at position {position} (expected +1 or -1)")]
    InvalidSpin { position: usize, value: i64 },
    #[error("state label must contain at least one qubit")]
    EmptyLabel,
    #[error("state index {value} out of range for {n_qubits} qubits")]
    IndexOutOfRange { value: u64, n_qubits: usize },

    #[error("qubit indices start at 1")]
    QubitIndexZero,
    #[error("qubit index {index} exceeds model size {n_qubits}")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("coupling ({0},{0}) couples a qubit to itself")]
    SelfCoupling(usize),
    #[error("term {0} appears more than once")]
    DuplicateTerm(String),
    #[error("coefficient of term {0} is not finite")]
    NonFiniteCoefficient(String),
    #[error("{n} qubits requested, at most {max} are supported")]
    TooManyQubits { n: usize, max: usize },
    #[error("a model needs at least one qubit")]
    NoQubits,
    #[error("{which} offsets have length {found}, model has {expected} qubits")]
    OffsetLength {
        which: char,
        expected: usize,
        found: usize,
    },

    #[error("annealing parameter s = {0} lies outside [0, 1]")]
    OutOfDomain(f64),
    #[error("unknown annealing schedule `{0}`")]
    UnknownSchedule(String),
    #[error("schedule function {which}(s) is not finite at s = {s}")]
    NonFiniteSchedule { which: char, s: f64 },
    #[error("schedule table row {row}: {reason}")]
    ScheduleTable { row: usize, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("explicit Magnus terms need a polynomial of degree <= 2, got degree {0}")]
    UnsupportedDegree(usize),
    #[error("Magnus order {0} outside supported range 1..=8")]
    OrderOutOfRange(usize),
    #[error("matrix is not anti-Hermitian (deviation {0:e})")]
    NotAntiHermitian(f64),
    #[error("non-finite values produced at step {step}")]
    NumericalFailure { step: usize },
    #[error("no convergence after {} doublings", .trace.len())]
    NonConvergence { trace: Vec<ConvergenceRecord> },
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("annealing time {0} must be finite and non-negative")]
    InvalidTime(f64),
}
