//! Closed-form first four Magnus terms for a quadratic generator.
//!
//! With `A(u) = H_0 + H_1 u + H_2 u^2` every nested time-ordered integral
//! reduces to commutators of the coefficients weighted by integrals of
//! monomials over the ordered simplex `1 > u_1 > ... > u_k > 0`.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};

/// `int_{1>u_1>...>u_k>0} prod_i u_i^{e_i}`
pub fn simplex_weight(exps: &[usize]) -> f64 {
    let mut acc = 0usize;
    let mut w = 1.0;
    for &e in exps.iter().rev() {
        acc += e + 1;
        w /= acc as f64;
    }
    w
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `Omega_1 .. Omega_upto` at the end of the unit step.
pub fn explicit_terms<L: LieAlgebra>(
    alg: &L,
    coeffs: &[L::Elem],
    upto: usize,
) -> Result<Vec<L::Elem>> {
    if coeffs.len() > 3 {
        return Err(Error::UnsupportedDegree(coeffs.len() - 1));
    }
    if !(1..=4).contains(&upto) {
        return Err(Error::OrderOutOfRange(upto));
    }
    let d = coeffs.len();
    let h = coeffs;
    let w2 = |a, b| simplex_weight(&[a, b]);
    let w3 = |a, b, c| simplex_weight(&[a, b, c]);
    let w4 = |a, b, c, e| simplex_weight(&[a, b, c, e]);

    let mut terms = Vec::with_capacity(upto);

    let mut omega1 = alg.zero();
    for (a, ha) in h.iter().enumerate() {
        alg.axpy(&mut omega1, re(1.0 / (a as f64 + 1.0)), ha);
    }
    terms.push(omega1);
    if upto == 1 {
        return Ok(terms);
    }

    // [H_p, H_q] for p < q
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|p| (p + 1..d).map(move |q| (p, q)))
        .collect();
    let brackets: Vec<L::Elem> = pairs
        .iter()
        .map(|&(p, q)| alg.commutator(&h[p], &h[q]))
        .collect();

    let mut omega2 = alg.zero();
    for (k, &(p, q)) in pairs.iter().enumerate() {
        alg.axpy(&mut omega2, re(0.5 * (w2(p, q) - w2(q, p))), &brackets[k]);
    }
    terms.push(omega2);
    if upto == 2 {
        return Ok(terms);
    }

    // [A1,[A2,A3]] + [A3,[A2,A1]]
    let mut omega3 = alg.zero();
    for (a, ha) in h.iter().enumerate() {
        let mut inner = alg.zero();
        for (k, &(p, q)) in pairs.iter().enumerate() {
            alg.axpy(&mut inner, re(w3(a, p, q) - w3(a, q, p)), &brackets[k]);
        }
        let t = alg.commutator(ha, &inner);
        alg.axpy(&mut omega3, re(1.0 / 6.0), &t);
    }
    for (c, hc) in h.iter().enumerate() {
        let mut inner = alg.zero();
        for (k, &(p, q)) in pairs.iter().enumerate() {
            alg.axpy(&mut inner, re(w3(q, p, c) - w3(p, q, c)), &brackets[k]);
        }
        let t = alg.commutator(hc, &inner);
        alg.axpy(&mut omega3, re(1.0 / 6.0), &t);
    }
    terms.push(omega3);
    if upto == 3 {
        return Ok(terms);
    }

    // D[k][c] = [[H_p, H_q], H_c] for pair k = (p, q)
    let nested: Vec<Vec<L::Elem>> = brackets
        .iter()
        .map(|b| h.iter().map(|hc| alg.commutator(b, hc)).collect())
        .collect();
    let combine = |weight: &dyn Fn(usize, usize, usize) -> f64| {
        let mut out = alg.zero();
        for (k, &(p, q)) in pairs.iter().enumerate() {
            for (c, dkc) in nested[k].iter().enumerate() {
                let w = weight(p, q, c);
                if w != 0.0 {
                    alg.axpy(&mut out, re(w), dkc);
                }
            }
        }
        out
    };

    let mut omega4 = alg.zero();
    let twelfth = re(1.0 / 12.0);
    for (x, hx) in h.iter().enumerate() {
        // [[[A1,A2],A3],A4]: outer index is s_4
        let n1 = combine(&|p, q, c| w4(p, q, c, x) - w4(q, p, c, x));
        let t1 = alg.commutator(&n1, hx);
        // [A1,[[A2,A3],A4]]
        let n2 = combine(&|p, q, c| w4(x, p, q, c) - w4(x, q, p, c));
        // [A1,[A2,[A3,A4]]]
        let n3 = combine(&|p, q, c| w4(x, c, q, p) - w4(x, c, p, q));
        // [A2,[A3,[A4,A1]]]: outer index is s_2
        let n4 = combine(&|p, q, c| w4(p, x, c, q) - w4(q, x, c, p));
        let mut inner = n2;
        alg.axpy(&mut inner, re(1.0), &n3);
        alg.axpy(&mut inner, re(1.0), &n4);
        let t = alg.commutator(hx, &inner);
        alg.axpy(&mut omega4, twelfth, &t1);
        alg.axpy(&mut omega4, twelfth, &t);
    }
    terms.push(omega4);
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_weights() {
        assert_eq!(simplex_weight(&[0]), 1.0);
        assert_eq!(simplex_weight(&[0, 0]), 0.5);
        assert_eq!(simplex_weight(&[0, 0, 0, 0]), 1.0 / 24.0);
        // int_0^1 u1 int_0^u1 du2 = 1/3
        assert!((simplex_weight(&[1, 0]) - 1.0 / 3.0).abs() < 1e-16);
        // int_0^1 int_0^u1 u2 = 1/6
        assert!((simplex_weight(&[0, 1]) - 1.0 / 6.0).abs() < 1e-16);
    }
}
