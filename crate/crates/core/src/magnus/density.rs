use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, hermitian_part, CMatrix, CVector};

/// A density matrix `rho` on `2^n` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    /// Wraps a matrix without checking the density-matrix invariants.
    pub fn from_matrix(m: CMatrix) -> Self {
        DensityMatrix(m)
    }

    /// `|psi><psi|`
    pub fn from_pure_state(psi: &CVector) -> Self {
        DensityMatrix(psi * psi.adjoint())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `tr(rho^2)`
    pub fn purity(&self) -> f64 {
        // tr(rho rho) = sum_ij rho_ij rho_ji
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.0[(i, j)] * self.0[(j, i)];
            }
        }
        acc.re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(hermitian_part(&self.0))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Measurement probabilities in the computational basis.
    pub fn probabilities(&self) -> Vec<f64> {
        self.0.diagonal().iter().map(|z| z.re).collect()
    }
}

fn check_same_shape(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    Ok(())
}

/// `max_ij |a_ij - b_ij|`
pub fn error_max(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    check_same_shape(a, b)?;
    Ok(a.iter()
        .zip(b.iter())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).norm())))
}

/// `sum_ij |a_ij - b_ij| / 2^(2n)`
pub fn error_mean(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    check_same_shape(a, b)?;
    let total: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).sum();
    Ok(total / (a.nrows() * a.ncols()) as f64)
}
