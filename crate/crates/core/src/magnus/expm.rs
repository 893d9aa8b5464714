//! Exponentials of anti-Hermitian generators.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{anti_hermitian_deviation, eigh, hermitian_part, max_abs, CMatrix, CVector, I};

/// Relative anti-Hermiticity tolerance accepted by [`exponentiate_omega`].
pub const ANTI_HERMITIAN_TOL: f64 = 1e-10;

/// `exp(Omega) = V diag(phases) V^dagger`, with `V` unitary.
#[derive(Debug, Clone)]
pub struct UnitaryFactor {
    vectors: CMatrix,
    phases: Vec<Complex64>,
}

impl UnitaryFactor {
    /// Diagonalises the Hermitian matrix `i Omega`.
    pub fn new(omega: &CMatrix) -> Result<Self> {
        let scale = max_abs(omega).max(1.0);
        let dev = anti_hermitian_deviation(omega);
        if dev.is_nan() || dev > ANTI_HERMITIAN_TOL * scale {
            return Err(Error::NotAntiHermitian(dev));
        }
        let generator = hermitian_part(&omega.map(|z| I * z));
        let (values, vectors) = eigh(generator);
        let phases = values
            .iter()
            .map(|&l| Complex64::new(0.0, -l).exp())
            .collect();
        Ok(UnitaryFactor { vectors, phases })
    }

    pub fn apply(&self, psi: &CVector) -> CVector {
        let mut coords = self.vectors.ad_mul(psi);
        for (c, p) in coords.iter_mut().zip(&self.phases) {
            *c *= p;
        }
        &self.vectors * coords
    }

    pub fn to_matrix(&self) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (j, p) in self.phases.iter().enumerate() {
            for z in scaled.column_mut(j).iter_mut() {
                *z *= p;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

pub fn exponentiate_omega(omega: &CMatrix) -> Result<CMatrix> {
    Ok(UnitaryFactor::new(omega)?.to_matrix())
}
