//! Unitary propagator from a Hermitian generator.

use num_complex::Complex;

use super::{hermitian_eig, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::{atol, Real};

/// `exp(-i H tau)` for Hermitian `H`, via the spectral decomposition; the
/// result is unitary up to eigensolver tolerance.
///
/// Errors when `max |H - H^dag|` exceeds `1e-10`, naming the offending
/// magnitude.
pub fn expm_unitary<R: Real>(h: &ComplexMatrix<R>, tau: R) -> Result<ComplexMatrix<R>> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch { expected: h.rows(), found: h.cols() });
    }
    let deviation = h.hermiticity_deviation();
    if deviation > atol::<R>(1e-10) {
        return Err(Error::NotHermitian { deviation: deviation.to_f64().unwrap_or(f64::NAN) });
    }
    let (w, v) = hermitian_eig(h)?;
    let n = h.rows();
    // U = V diag(e^{-i w tau}) V^dag
    let phases: Vec<Complex<R>> = w
        .iter()
        .map(|&lam| Complex::from_polar(R::one(), -lam * tau))
        .collect();
    let mut u = ComplexMatrix::<R>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(R::zero(), R::zero());
            for k in 0..n {
                acc += v[(i, k)] * phases[k] * v[(j, k)].conj();
            }
            u[(i, j)] = acc;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    type M = ComplexMatrix<f64>;

    #[test]
    fn zero_generator_gives_identity() {
        for n in [1usize, 3, 5] {
            let u = expm_unitary(&M::zeros(n, n), 1.0).unwrap();
            assert!(u.max_abs_diff(&M::identity(n)) < 1e-14);
        }
    }

    #[test]
    fn rabi_half_period() {
        // H = Omega sigma_x, tau = pi / (2 Omega): U = -i sigma_x.
        let omega = 0.7;
        let h = M::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(omega, 0.0),
                Complex64::new(omega, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let u = expm_unitary(&h, std::f64::consts::FRAC_PI_2 / omega).unwrap();
        let expect = M::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        assert!(u.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = M::new(
            2,
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        match expm_unitary(&h, 1.0) {
            Err(Error::NotHermitian { deviation }) => {
                assert!((deviation - 0.5).abs() < 1e-12);
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }
}
