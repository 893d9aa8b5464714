//! Closed-form evolutions of two small annealing problems, and the trace
//! distance used to compare states.
//!
//! `H1(s) = cos(pi s / 2) X + sin(pi s / 2) Z` on one qubit and
//! `H2(s) = cos(pi s / 2) (X1 + X2) + sin(pi s / 2) 2 Z1 Z2` on two qubits,
//! both started in the all-minus state and run for annealing time `tau`.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float math on no_std
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hamiltonian::{HermitianOperator, IsingModel, Term};
use crate::linalg::{c, eigvalsh, hermitian_part, CMatrix, CVector, I};
use crate::magnus::DensityMatrix;

fn check_s(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfDomain(s));
    }
    Ok(())
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidTime(tau));
    }
    Ok(())
}

fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
}

fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0), -I, I, c(0.0)])
}

fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
}

/// Bloch vector `(x, y, z)` of the analytic single-qubit state.
pub fn bloch_h1(s: f64, tau: f64) -> Result<[f64; 3]> {
    check_s(s)?;
    check_tau(tau)?;
    let r = 2.0 * tau;
    let w0 = FRAC_PI_2;
    let w1 = (4.0 * tau * tau + PI * PI / 4.0).sqrt();
    let w1sq = w1 * w1;
    let p = r * r + w0 * w0 * (w1 * s).cos();
    let q = w0 * w1 * (w1 * s).sin();
    let x = (-p * (w0 * s).cos() - w0 * w1 * (w0 * s).sin() * (w1 * s).sin()) / w1sq;
    let y = -r * w0 * (1.0 - (w1 * s).cos()) / w1sq;
    let z = (-p * (w0 * s).sin() + q * (w0 * s).cos()) / w1sq;
    Ok([x, y, z])
}

/// `(x X + y Y + z Z + I) / 2` for the analytic single-qubit state.
pub fn rho_h1(s: f64, tau: f64) -> Result<DensityMatrix> {
    let [x, y, z] = bloch_h1(s, tau)?;
    let m =
        (pauli_x() * c(x) + pauli_y() * c(y) + pauli_z() * c(z) + CMatrix::identity(2, 2)) * c(0.5);
    Ok(DensityMatrix::from_matrix(m))
}

/// `(c0, c1, c1, c0)` for the analytic two-qubit state.
pub fn psi_h2(s: f64, tau: f64) -> Result<CVector> {
    check_s(s)?;
    check_tau(tau)?;
    let k = (1.0 + 64.0 * tau * tau / (PI * PI)).sqrt();
    let phase = FRAC_PI_4 * s * k;
    let (sp, cp) = (phase.sin(), phase.cos());
    let sin_s = (FRAC_PI_2 * s).sin();
    let cos_s = (FRAC_PI_2 * s).cos();
    let minus = (1.0 - sin_s).max(0.0).sqrt();
    let plus = (1.0 + sin_s).sqrt();

    let c0 =
        c(cp * minus / 2.0) + (Complex64::new(plus, 8.0 * tau * minus / PI)) * (sp / (2.0 * k));
    let inner =
        c(cp * (1.0 + sin_s)) + Complex64::new(-cos_s, 8.0 * tau * (1.0 + sin_s) / PI) * (sp / k);
    let c1 = -inner / (2.0 * plus);
    Ok(CVector::from_vec(alloc::vec![c0, c1, c1, c0]))
}

pub fn rho_h2(s: f64, tau: f64) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_pure_state(&psi_h2(s, tau)?))
}

/// `H1(s)` assembled from Pauli matrices.
pub fn hamiltonian_h1(s: f64) -> Result<HermitianOperator> {
    check_s(s)?;
    let m = pauli_x() * c((FRAC_PI_2 * s).cos()) + pauli_z() * c((FRAC_PI_2 * s).sin());
    Ok(HermitianOperator::new_unchecked(m))
}

/// `H2(s)` assembled from Kronecker products. Qubit 1 is the least
/// significant bit of the basis index.
pub fn hamiltonian_h2(s: f64) -> Result<HermitianOperator> {
    check_s(s)?;
    let id = CMatrix::identity(2, 2);
    let (x, z) = (pauli_x(), pauli_z());
    let x1 = id.kronecker(&x);
    let x2 = x.kronecker(&id);
    let zz = z.kronecker(&z);
    let m = (x1 + x2) * c((FRAC_PI_2 * s).cos()) + zz * c(2.0 * (FRAC_PI_2 * s).sin());
    Ok(HermitianOperator::new_unchecked(m))
}

/// `H1` as an Ising model: a unit field on qubit 1.
pub fn model_h1() -> IsingModel {
    IsingModel::from_terms([(Term::Field(1), 1.0)]).expect("valid model")
}

/// `H2` as an Ising model: coupling 2 between qubits 1 and 2.
pub fn model_h2() -> IsingModel {
    IsingModel::from_terms([(Term::coupling(1, 2), 2.0)]).expect("valid model")
}

/// `(1/2) sum |eig(a - b)|`
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.shape() != b.shape() || a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    let eig: Vec<f64> = eigvalsh(hermitian_part(&(a - b)));
    Ok(0.5 * eig.iter().map(|l| l.abs()).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn start_is_all_minus() {
        let rho = rho_h1(0.0, 7.0).unwrap();
        let expected = (CMatrix::identity(2, 2) - pauli_x()) * c(0.5);
        assert!(max_abs(&(rho.matrix() - expected)) < 1e-15);
        let psi = psi_h2(0.0, 3.0).unwrap();
        let want = [0.5, -0.5, -0.5, 0.5];
        for (z, w) in psi.iter().zip(want) {
            assert!((z - c(w)).norm() < 1e-15);
        }
    }

    #[test]
    fn states_are_pure() {
        for &(s, tau) in &[(0.3, 1.0), (1.0, 100.0), (0.77, 0.01), (0.5, 42.0)] {
            let [x, y, z] = bloch_h1(s, tau).unwrap();
            assert!((x * x + y * y + z * z - 1.0).abs() < 1e-12);
            assert!((psi_h2(s, tau).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn endpoint_hamiltonians() {
        assert!(max_abs(&(hamiltonian_h1(0.0).unwrap().matrix() - pauli_x())) < 1e-15);
        assert!(max_abs(&(hamiltonian_h1(1.0).unwrap().matrix() - pauli_z())) < 1e-15);
        let h = hamiltonian_h2(0.5).unwrap();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((h.matrix()[(0, 1)] - c(r)).norm() < 1e-15);
        assert!((h.matrix()[(0, 0)] - c(2.0 * r)).norm() < 1e-15);
        assert!((h.matrix()[(1, 1)] - c(-2.0 * r)).norm() < 1e-15);
    }

    #[test]
    fn trace_distance_examples() {
        let p = CMatrix::from_diagonal(&CVector::from_vec(alloc::vec![c(0.6), c(0.4)]));
        let q = CMatrix::from_diagonal(&CVector::from_vec(alloc::vec![c(0.5), c(0.5)]));
        assert!((trace_distance(&p, &q).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(trace_distance(&p, &p).unwrap(), 0.0);
        let up = CMatrix::from_diagonal(&CVector::from_vec(alloc::vec![c(1.0), c(0.0)]));
        let down = CMatrix::from_diagonal(&CVector::from_vec(alloc::vec![c(0.0), c(1.0)]));
        assert!((trace_distance(&up, &down).unwrap() - 1.0).abs() < 1e-15);
        assert!(trace_distance(&up, &CMatrix::identity(4, 4)).is_err());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(rho_h1(1.5, 1.0).unwrap_err(), Error::OutOfDomain(1.5));
        assert_eq!(psi_h2(0.5, 0.0).unwrap_err(), Error::InvalidTime(0.0));
    }
}
