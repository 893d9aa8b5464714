//! Generic-order Magnus terms from the Bernoulli-number recursion.
//!
//! `Omega_1(u) = int_0^u A`, and for `k > 1`
//! `Omega_k(u) = sum_{j=1}^{k-1} B_j / j! int_0^u S_k^(j)` with
//! `S_k^(1) = [Omega_{k-1}, A]` and
//! `S_k^(j) = sum_{l=1}^{k-j} [Omega_l, S_{k-l}^(j-1)]`.
//!
//! Every quantity is a polynomial in `u`, so the recursion is carried out
//! exactly on polynomial coefficients.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::algebra::{axpy_poly, commutator_poly, integrate, value_at_one, LieAlgebra, Polynomial};
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 8;

/// Bernoulli numbers `B_0 .. B_7` with `B_1 = -1/2`.
const BERNOULLI: [f64; MAX_ORDER] = [1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0];

fn factorial(j: usize) -> f64 {
    (1..=j).map(|k| k as f64).product()
}

/// `Omega_1 .. Omega_k` at the end of the unit step.
pub fn recursive_terms<L: LieAlgebra>(
    alg: &L,
    coeffs: &[L::Elem],
    k: usize,
) -> Result<Vec<L::Elem>> {
    if !(1..=MAX_ORDER).contains(&k) {
        return Err(Error::OrderOutOfRange(k));
    }
    let a = Polynomial::new(coeffs.to_vec());
    // omega[l] for l = 1..=k (index 0 unused)
    let mut omega: Vec<Polynomial<L::Elem>> = Vec::with_capacity(k + 1);
    omega.push(Polynomial::new(Vec::new()));
    omega.push(integrate(alg, &a));
    // s[m][j] = S_m^(j) for 2 <= m <= k, 1 <= j <= m - 1
    let mut s: Vec<Vec<Polynomial<L::Elem>>> = alloc::vec![Vec::new(), Vec::new()];

    for m in 2..=k {
        let mut row: Vec<Polynomial<L::Elem>> = Vec::with_capacity(m);
        row.push(Polynomial::new(Vec::new()));
        row.push(commutator_poly(alg, &omega[m - 1], &a));
        for j in 2..m {
            let mut acc = Polynomial::new(Vec::new());
            for l in 1..=m - j {
                let t = commutator_poly(alg, &omega[l], &s[m - l][j - 1]);
                axpy_poly(alg, &mut acc, Complex64::new(1.0, 0.0), &t);
            }
            row.push(acc);
        }
        let mut integrand = Polynomial::new(Vec::new());
        for (j, sj) in row.iter().enumerate().skip(1) {
            let w = BERNOULLI[j] / factorial(j);
            if w != 0.0 {
                axpy_poly(alg, &mut integrand, Complex64::new(w, 0.0), sj);
            }
        }
        omega.push(integrate(alg, &integrand));
        s.push(row);
    }

    Ok(omega[1..].iter().map(|p| value_at_one(alg, p)).collect())
}
