//! Eigenvalues checked against roots of the characteristic polynomial.

use nalgebra::DMatrix;
use qdyn_core::{eig_decompose_matrix, Tolerances, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let a = DMatrix::from_fn(d, d, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    (&a + a.adjoint()) * C64::from(0.5)
}

/// Coefficients c_0..c_d of det(λI − A) = Σ c_k λ^k via Faddeev-LeVerrier.
fn char_poly(a: &DMatrix<C64>) -> Vec<C64> {
    let n = a.nrows();
    let mut c = vec![C64::from(0.0); n + 1];
    c[n] = C64::from(1.0);
    let id = DMatrix::<C64>::identity(n, n);
    let mut m = DMatrix::<C64>::zeros(n, n);
    for k in 1..=n {
        m = a * &m + &id * c[n + 1 - k];
        c[n - k] = -(a * &m).trace() / C64::from(k as f64);
    }
    c
}

fn horner(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::from(0.0);
    let mut dp = C64::from(0.0);
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

/// Aberth-Ehrlich simultaneous root iteration.
fn roots(c: &[C64]) -> Vec<C64> {
    let n = c.len() - 1;
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner(c, z[i]);
            let ratio = p / dp;
            let s: C64 = (0..n).filter(|&j| j != i).map(|j| C64::from(1.0) / (z[i] - z[j])).sum();
            let w = ratio / (C64::from(1.0) - ratio * s);
            z[i] -= w;
            max_step = max_step.max(w.norm());
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish on the original polynomial.
    for zi in &mut z {
        for _ in 0..3 {
            let (p, dp) = horner(c, *zi);
            if dp.norm() > 0.0 {
                *zi -= p / dp;
            }
        }
    }
    z
}

#[test]
fn random_8x8_matches_characteristic_polynomial_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let h = random_hermitian(8, &mut rng);
        let mut oracle: Vec<f64> = roots(&char_poly(&h)).into_iter().map(|z| z.re).collect();
        oracle.sort_by(f64::total_cmp);
        let eig = eig_decompose_matrix(&h, &Tolerances::default()).unwrap();
        for (a, b) in eig.values.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "eigenvalue {a} vs root {b}");
        }
    }
}

#[test]
fn real_symmetric_8x8_matches_characteristic_polynomial_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = DMatrix::from_fn(8, 8, |_, _| C64::from(rng.random_range(-1.0..1.0)));
    let h = (&a + a.transpose()) * C64::from(0.5);
    let mut oracle: Vec<f64> = roots(&char_poly(&h)).into_iter().map(|z| z.re).collect();
    oracle.sort_by(f64::total_cmp);
    let eig = eig_decompose_matrix(&h, &Tolerances::default()).unwrap();
    for (a, b) in eig.values.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-8);
    }
}
