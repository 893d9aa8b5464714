use num_complex::Complex64;
use qanneal_core::linalg::{anti_hermitian_deviation, commutator, max_abs};
use qanneal_core::magnus::{exponentiate_omega, omega_explicit4, omega_recursive, omega_sum};
use qanneal_core::{CMatrix, Error, MatrixPolynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_anti_hermitian(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> CMatrix {
    let m = CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    (&m - m.adjoint()) * Complex64::new(0.5 * scale, 0.0)
}

fn random_poly(rng: &mut ChaCha8Rng, dim: usize, degree: usize, scale: f64) -> MatrixPolynomial {
    MatrixPolynomial::new(
        (0..=degree)
            .map(|_| random_anti_hermitian(rng, dim, scale))
            .collect(),
    )
}

fn eval(p: &MatrixPolynomial, u: f64) -> CMatrix {
    let dim = p.coeffs[0].nrows();
    p.coeffs
        .iter()
        .rev()
        .fold(CMatrix::zeros(dim, dim), |acc, c| {
            acc * Complex64::new(u, 0.0) + c
        })
}

/// Gauss-Legendre nodes and weights on [0, 1].
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (x + 1.0), 0.5 * w));
    }
    out
}

/// `U' = A(u) U` on [0, 1] by classical RK4.
fn propagate(p: &MatrixPolynomial, steps: usize) -> CMatrix {
    let dim = p.coeffs[0].nrows();
    let h = 1.0 / steps as f64;
    let hc = |x: f64| Complex64::new(x, 0.0);
    let mut u = CMatrix::identity(dim, dim);
    for k in 0..steps {
        let t = k as f64 * h;
        let (a0, am, a1) = (eval(p, t), eval(p, t + 0.5 * h), eval(p, t + h));
        let k1 = &a0 * &u;
        let k2 = &am * (&u + &k1 * hc(0.5 * h));
        let k3 = &am * (&u + &k2 * hc(0.5 * h));
        let k4 = &a1 * (&u + &k3 * hc(h));
        u += (k1 + (k2 + k3) * hc(2.0) + k4) * hc(h / 6.0);
    }
    u
}

#[test]
fn omega2_matches_gauss_legendre_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let nodes = gauss_legendre(64);
    for _ in 0..20 {
        let p = random_poly(&mut rng, 2, 2, 1.0);
        let omega2 = &omega_explicit4(&p, 2).unwrap()[1].matrix;
        let mut quad = CMatrix::zeros(2, 2);
        for &(u1, w1) in &nodes {
            let a1 = eval(&p, u1);
            for &(v, w2) in &nodes {
                let u2 = v * u1;
                quad += commutator(&a1, &eval(&p, u2)) * Complex64::new(0.5 * w1 * w2 * u1, 0.0);
            }
        }
        assert!(max_abs(&(omega2 - quad)) < 1e-12);
    }
}

#[test]
fn recursive_matches_explicit_on_random_quadratics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..1000 {
        let dim = if trial % 2 == 0 { 2 } else { 4 };
        let p = random_poly(&mut rng, dim, 2, 1.0);
        let explicit = omega_explicit4(&p, 4).unwrap();
        let recursive = omega_recursive(&p, 4).unwrap();
        for (e, r) in explicit.iter().zip(&recursive) {
            assert_eq!(e.order, r.order);
            assert!(
                max_abs(&(&e.matrix - &r.matrix)) < 1e-11,
                "trial {trial} order {}",
                e.order
            );
        }
    }
}

#[test]
fn truncation_error_scales_with_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let base = random_poly(&mut rng, 2, 2, 1.0);
    let scaled = |eps: f64| {
        MatrixPolynomial::new(
            base.coeffs
                .iter()
                .map(|c| c * Complex64::new(eps, 0.0))
                .collect(),
        )
    };
    let error = |eps: f64, k: usize| {
        let p = scaled(eps);
        let exact = propagate(&p, 4000);
        let terms = if k <= 4 {
            omega_explicit4(&p, k)
        } else {
            omega_recursive(&p, k)
        }
        .unwrap();
        let u = exponentiate_omega(&omega_sum(&terms).unwrap()).unwrap();
        max_abs(&(u - exact))
    };
    for k in 1..=6 {
        let ratio = error(0.4, k) / error(0.2, k);
        let expected = 2f64.powi(k as i32 + 1);
        assert!(ratio > 0.6 * expected, "order {k}: ratio {ratio}");
    }
}

#[test]
fn terms_are_anti_hermitian() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = random_poly(&mut rng, 4, 3, 1.0);
    for t in omega_recursive(&p, 8).unwrap() {
        assert!(
            anti_hermitian_deviation(&t.matrix) < 1e-12,
            "order {}",
            t.order
        );
    }
}

#[test]
fn time_independent_generator_has_only_first_term() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let h0 = random_anti_hermitian(&mut rng, 4, 1.0);
    let p = MatrixPolynomial::new(vec![h0.clone()]);
    let terms = omega_explicit4(&p, 4).unwrap();
    assert!(max_abs(&(&terms[0].matrix - &h0)) < 1e-15);
    for t in &terms[1..] {
        assert!(max_abs(&t.matrix) < 1e-15);
    }
}

#[test]
fn commuting_coefficients_have_no_second_term() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let h0 = random_anti_hermitian(&mut rng, 2, 1.0);
    let p = MatrixPolynomial::new(vec![h0.clone(), &h0 * Complex64::new(-2.5, 0.0)]);
    let terms = omega_explicit4(&p, 2).unwrap();
    assert!(max_abs(&terms[1].matrix) < 1e-15);
}

#[test]
fn first_terms_agree_for_any_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let p = random_poly(&mut rng, 2, 2, 1.0);
    let e = omega_explicit4(&p, 1).unwrap();
    let r = omega_recursive(&p, 1).unwrap();
    assert!(max_abs(&(&e[0].matrix - &r[0].matrix)) < 1e-15);
    let e = omega_explicit4(&p, 2).unwrap();
    let r = omega_recursive(&p, 2).unwrap();
    assert!(max_abs(&(&e[1].matrix - &r[1].matrix)) < 1e-14);
}

#[test]
fn rejects_unsupported_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let cubic = random_poly(&mut rng, 2, 3, 1.0);
    assert_eq!(
        omega_explicit4(&cubic, 4).unwrap_err(),
        Error::UnsupportedDegree(3)
    );
    let quad = random_poly(&mut rng, 2, 2, 1.0);
    assert_eq!(
        omega_explicit4(&quad, 5).unwrap_err(),
        Error::OrderOutOfRange(5)
    );
    assert_eq!(
        omega_recursive(&quad, 9).unwrap_err(),
        Error::OrderOutOfRange(9)
    );
    assert_eq!(
        omega_recursive(&quad, 0).unwrap_err(),
        Error::OrderOutOfRange(0)
    );
    let mixed = MatrixPolynomial::new(vec![CMatrix::zeros(2, 2), CMatrix::zeros(4, 4)]);
    assert!(matches!(
        omega_recursive(&mixed, 2),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn exponential_examples() {
    let zero = CMatrix::zeros(3, 3);
    assert!(max_abs(&(exponentiate_omega(&zero).unwrap() - CMatrix::identity(3, 3))) < 1e-15);

    let i = Complex64::new(0.0, 1.0);
    let x = CMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0].map(|v| Complex64::new(v, 0.0)));
    let u = exponentiate_omega(&(x * (-i * std::f64::consts::FRAC_PI_2))).unwrap();
    assert!(u[(0, 0)].norm() < 1e-15 && u[(1, 1)].norm() < 1e-15);
    assert!((u[(0, 1)] + i).norm() < 1e-15 && (u[(1, 0)] + i).norm() < 1e-15);

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let omega = random_anti_hermitian(&mut rng, 16, 3.0);
        let u = exponentiate_omega(&omega).unwrap();
        assert!(max_abs(&(u.adjoint() * &u - CMatrix::identity(16, 16))) < 1e-13);
    }

    let hermitian = CMatrix::identity(2, 2);
    assert!(matches!(
        exponentiate_omega(&hermitian),
        Err(Error::NotAntiHermitian(_))
    ));
}
