//! Independent oracles shared by the integration tests. These deliberately
//! avoid the library's solver paths: the matrix exponential is Taylor
//! scaling-and-squaring, and Laguerre polynomials come from the explicit
//! binomial sum.

#![allow(dead_code)]

use num_complex::Complex64 as C64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use zeno_distill::Matrix64;

/// `exp(-i H tau)` by scaling-and-squaring of the plain Taylor series.
pub fn expm_series_oracle(h: &Matrix64, tau: f64) -> Matrix64 {
    let n = h.rows();
    let a = h.scale(C64::new(0.0, -tau));
    // scale so the series converges fast
    let norm: f64 = a.frobenius_norm();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let b = a.scale(C64::new(1.0 / 2f64.powi(squarings as i32), 0.0));

    let mut result = Matrix64::identity(n);
    let mut term = Matrix64::identity(n);
    for k in 1..=30 {
        term = term.mul(&b).scale(C64::new(1.0 / k as f64, 0.0));
        result = result.add(&term);
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.mul(&result);
    }
    result
}

/// `L_m^{(p)}(x)` from the explicit sum
/// `sum_i (-1)^i C(m+p, m-i) x^i / i!`.
pub fn laguerre_sum_oracle(m: usize, p: u32, x: f64) -> f64 {
    let mut total = 0.0;
    for i in 0..=m {
        let mut term = binomial((m + p as usize) as u64, (m - i) as u64);
        for k in 1..=i {
            term *= x / k as f64;
        }
        if i % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    total
}

fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// The explicit vibronic factor used as an oracle for `lamb_dicke_factor`:
/// `exp(-eta^2/2) * (m! p! / (m+p)!) * L_m^{(p)}(eta^2)` with the Laguerre
/// value from the sum oracle.
pub fn lamb_dicke_oracle(p: u32, m: usize, eta: f64) -> f64 {
    let x = eta * eta;
    let mut ratio = 1.0;
    for k in 1..=(p as usize) {
        ratio *= k as f64 / (m + k) as f64;
    }
    (-x / 2.0).exp() * ratio * laguerre_sum_oracle(m, p, x)
}

pub fn random_matrix(n: usize, rng: &mut ChaCha12Rng) -> Matrix64 {
    Matrix64::from_fn(n, n, |_, _| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
}

pub fn random_hermitian(n: usize, rng: &mut ChaCha12Rng) -> Matrix64 {
    let a = random_matrix(n, rng);
    a.add(&a.dagger()).scale(C64::new(0.5, 0.0))
}

/// Random unitary by Gram-Schmidt on random columns (independent of the
/// library's factorizations).
pub fn random_unitary(n: usize, rng: &mut ChaCha12Rng) -> Matrix64 {
    let a = random_matrix(n, rng);
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| a[(i, j)]).collect()).collect();
    for j in 0..n {
        for k in 0..j {
            let proj: C64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            let reference = cols[k].clone();
            for (z, r) in cols[j].iter_mut().zip(&reference) {
                *z -= proj * *r;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    Matrix64::from_fn(n, n, |i, j| cols[j][i])
}
