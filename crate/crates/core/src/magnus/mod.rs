//! Magnus-expansion propagation of the annealing Hamiltonian.

pub mod algebra;
pub mod density;
pub mod explicit;
pub mod expm;
pub mod recursive;
pub mod reference;
pub mod solver;

use alloc::vec::Vec;

pub use algebra::{DenseAlgebra, GeneratorAlgebra, LieAlgebra, LieCombination, Polynomial};
pub use density::{error_max, error_mean, DensityMatrix};
pub use explicit::simplex_weight;
pub use expm::{exponentiate_omega, UnitaryFactor, ANTI_HERMITIAN_TOL};
pub use recursive::MAX_ORDER;
pub use reference::simulate_reference_rk;
pub use solver::{
    build_step_polynomial, initial_state, logspace, simulate, simulate_fixed, simulate_sweep,
    AdaptiveOptions, ConvergenceRecord, Integrator, MatrixPolynomial, ReferenceDiagnostics,
    SimulationResult, Simulator, SolverConfig, StepControl, DEFAULT_ORDER,
};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// One Magnus term `Omega_k` at the end of a unit step.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaTerm {
    pub order: usize,
    pub matrix: CMatrix,
}

fn dense_algebra(poly: &MatrixPolynomial) -> Result<DenseAlgebra> {
    let dim = poly.coeffs.first().map_or(0, |m| m.nrows());
    for m in &poly.coeffs {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.nrows(),
            });
        }
    }
    Ok(DenseAlgebra { dim })
}

fn wrap(terms: Vec<CMatrix>) -> Vec<OmegaTerm> {
    terms
        .into_iter()
        .enumerate()
        .map(|(k, matrix)| OmegaTerm {
            order: k + 1,
            matrix,
        })
        .collect()
}

/// Closed-form `Omega_1 .. Omega_upto` (`upto <= 4`) for a generator of
/// degree at most two.
pub fn omega_explicit4(poly: &MatrixPolynomial, upto: usize) -> Result<Vec<OmegaTerm>> {
    let alg = dense_algebra(poly)?;
    Ok(wrap(explicit::explicit_terms(&alg, &poly.coeffs, upto)?))
}

/// `Omega_1 .. Omega_k` (`k <= 8`) from the recursion, for a generator of any
/// polynomial degree.
pub fn omega_recursive(poly: &MatrixPolynomial, k: usize) -> Result<Vec<OmegaTerm>> {
    let alg = dense_algebra(poly)?;
    Ok(wrap(recursive::recursive_terms(&alg, &poly.coeffs, k)?))
}

/// Sum of the terms.
pub fn omega_sum(terms: &[OmegaTerm]) -> Option<CMatrix> {
    let mut it = terms.iter();
    let first = it.next()?.matrix.clone();
    Some(it.fold(first, |acc, t| acc + &t.matrix))
}
