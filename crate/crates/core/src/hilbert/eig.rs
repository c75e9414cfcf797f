//! Eigendecompositions: complex Jacobi for Hermitian matrices, and a complex
//! Schur (Hessenberg + shifted QR) path for general matrices with
//! bi-orthogonal left/right eigenvector extraction.

use num_complex::Complex;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{atol, real, Real};

fn c<R: Real>(re: R, im: R) -> Complex<R> {
    Complex::new(re, im)
}

fn czero<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::zero())
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns ascending real eigenvalues and a unitary matrix whose
/// columns are the eigenvectors: `A = V diag(w) V^dag`.
///
/// The input is taken as Hermitian without checking; callers that need the
/// check should test [`ComplexMatrix::hermiticity_deviation`] first.
pub fn hermitian_eig<R: Real>(a: &ComplexMatrix<R>) -> Result<(Vec<R>, ComplexMatrix<R>)> {
    assert!(a.is_square(), "hermitian_eig requires a square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut v = ComplexMatrix::<R>::identity(n);
    if n <= 1 {
        let w = (0..n).map(|i| m[(i, i)].re).collect();
        return Ok((w, v));
    }

    let scale = m.max_abs();
    if scale == R::zero() {
        return Ok((vec![R::zero(); n], v));
    }
    let stop = R::epsilon() * scale;
    // Rotations on entries already at roundoff level are wasted work.
    let skip = stop * real::<R>(0.01);

    let max_sweeps = 100;
    for _sweep in 0..max_sweeps {
        let mut off = R::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(m[(i, j)].norm());
            }
        }
        if off <= stop {
            let mut w: Vec<R> = (0..n).map(|i| m[(i, i)].re).collect();
            sort_pairs(&mut w, &mut v);
            return Ok((w, v));
        }

        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= skip {
                    continue;
                }
                let phase = apq.unscale(mag); // e^{i phi}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (mag + mag);
                let t = if theta >= R::zero() {
                    R::one() / (theta + (R::one() + theta * theta).sqrt())
                } else {
                    -R::one() / (-theta + (R::one() + theta * theta).sqrt())
                };
                let cs = R::one() / (R::one() + t * t).sqrt();
                let sn = t * cs;

                // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] acting in the
                // (p, q) plane; update A <- J^dag A J and V <- V J.
                let jqp = -phase.conj().scale(sn);
                let jqq = phase.conj().scale(cs);

                // Columns: A <- A J.
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp.scale(cs) + akq * jqp;
                    m[(k, q)] = akp.scale(sn) + akq * jqq;
                }
                // Rows: A <- J^dag A.
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk.scale(cs) + aqk * jqp.conj();
                    m[(q, k)] = apk.scale(sn) + aqk * jqq.conj();
                }
                // The rotation annihilates the pivot and keeps the diagonal
                // real; enforce both against roundoff.
                m[(p, q)] = czero();
                m[(q, p)] = czero();
                m[(p, p)] = c(m[(p, p)].re, R::zero());
                m[(q, q)] = c(m[(q, q)].re, R::zero());

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp.scale(cs) + vkq * jqp;
                    v[(k, q)] = vkp.scale(sn) + vkq * jqq;
                }
            }
        }
    }
    Err(Error::NoConvergence { iterations: max_sweeps })
}

fn sort_pairs<R: Real>(w: &mut [R], v: &mut ComplexMatrix<R>) {
    let n = w.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[i].partial_cmp(&w[j]).unwrap());
    let w_old = w.to_vec();
    let v_old = v.clone();
    for (new, &old) in order.iter().enumerate() {
        w[new] = w_old[old];
        for r in 0..n {
            v[(r, new)] = v_old[(r, old)];
        }
    }
}

/// Complex Givens pair `(c, s)` with `c` real such that
/// `[[c, s], [-conj(s), c]] * [f, g]^T = [r, 0]^T`.
fn givens<R: Real>(f: Complex<R>, g: Complex<R>) -> (R, Complex<R>) {
    let fn_ = f.norm();
    let gn = g.norm();
    if gn == R::zero() {
        return (R::one(), czero());
    }
    if fn_ == R::zero() {
        return (R::zero(), g.conj().unscale(gn));
    }
    let r = (fn_ * fn_ + gn * gn).sqrt();
    let cs = fn_ / r;
    let sn = f.unscale(fn_) * g.conj().unscale(r);
    (cs, sn)
}

/// Complex Schur decomposition `A = Q T Q^dag` with `T` upper triangular and
/// `Q` unitary. Hessenberg reduction followed by single-shift QR iterations
/// with Wilkinson shifts.
pub fn schur<R: Real>(a: &ComplexMatrix<R>) -> Result<(ComplexMatrix<R>, ComplexMatrix<R>)> {
    assert!(a.is_square(), "schur requires a square matrix");
    let n = a.rows();
    let mut t = a.clone();
    let mut q = ComplexMatrix::<R>::identity(n);
    if n <= 1 {
        return Ok((q, t));
    }

    hessenberg(&mut t, &mut q);

    let eps = R::epsilon();
    let fro = t.frobenius_norm().max(R::min_positive_value());
    let mut hi = n - 1;
    let mut stagnation = 0usize;
    let mut total_iters = 0usize;
    let iter_cap = 40 * n;

    'outer: loop {
        // Deflate converged subdiagonal entries.
        loop {
            for k in (1..=hi).rev() {
                let sub = t[(k, k - 1)].norm();
                let local = t[(k - 1, k - 1)].norm() + t[(k, k)].norm();
                let tol = if local > R::zero() { eps * local } else { eps * fro };
                if sub <= tol {
                    t[(k, k - 1)] = czero();
                }
            }
            if t[(hi, hi - 1)].norm() == R::zero() {
                if hi <= 1 {
                    break 'outer;
                }
                hi -= 1;
                stagnation = 0;
                continue;
            }
            break;
        }

        let mut lo = hi;
        while lo > 0 && t[(lo, lo - 1)].norm() != R::zero() {
            lo -= 1;
        }

        if total_iters >= iter_cap {
            return Err(Error::NoConvergence { iterations: total_iters });
        }
        total_iters += 1;
        stagnation += 1;

        let mu = if stagnation.is_multiple_of(12) {
            // Exceptional shift to break symmetry-induced stalls.
            let mut kick = t[(hi, hi - 1)].norm();
            if hi >= 2 {
                kick += t[(hi - 1, hi - 2)].norm();
            }
            t[(hi, hi)] + c(real::<R>(0.75) * kick, R::zero())
        } else {
            wilkinson_shift(&t, hi)
        };

        // Single-shift bulge chase over the active window [lo, hi].
        let mut x = t[(lo, lo)] - mu;
        let mut z = t[(lo + 1, lo)];
        for k in lo..hi {
            let (cs, sn) = givens(x, z);
            // Rows k, k+1: T <- G T.
            for j in 0..n {
                let tkj = t[(k, j)];
                let tk1j = t[(k + 1, j)];
                t[(k, j)] = tkj.scale(cs) + sn * tk1j;
                t[(k + 1, j)] = tk1j.scale(cs) - sn.conj() * tkj;
            }
            // Columns k, k+1: T <- T G^dag, Q <- Q G^dag.
            for i in 0..n {
                let tik = t[(i, k)];
                let tik1 = t[(i, k + 1)];
                t[(i, k)] = tik.scale(cs) + sn.conj() * tik1;
                t[(i, k + 1)] = tik1.scale(cs) - sn * tik;
                let qik = q[(i, k)];
                let qik1 = q[(i, k + 1)];
                q[(i, k)] = qik.scale(cs) + sn.conj() * qik1;
                q[(i, k + 1)] = qik1.scale(cs) - sn * qik;
            }
            if k > lo {
                t[(k + 1, k - 1)] = czero();
            }
            if k + 1 < hi {
                x = t[(k + 1, k)];
                z = t[(k + 2, k)];
            }
        }
    }

    // Clean the strictly lower triangle.
    for i in 0..n {
        for j in 0..i {
            t[(i, j)] = czero();
        }
    }
    Ok((q, t))
}

/// Eigenvalue of the trailing 2x2 of the active block closest to the corner
/// entry.
fn wilkinson_shift<R: Real>(t: &ComplexMatrix<R>, hi: usize) -> Complex<R> {
    let a = t[(hi - 1, hi - 1)];
    let b = t[(hi - 1, hi)];
    let cc = t[(hi, hi - 1)];
    let d = t[(hi, hi)];
    let half = real::<R>(0.5);
    let delta = (a - d).scale(half);
    let disc = (delta * delta + b * cc).sqrt();
    let lam1 = (a + d).scale(half) + disc;
    let lam2 = (a + d).scale(half) - disc;
    if (lam1 - d).norm() <= (lam2 - d).norm() {
        lam1
    } else {
        lam2
    }
}

/// Householder reduction to upper Hessenberg form, accumulating the unitary
/// similarity into `q` so that `a_original = q * h * q^dag` stays invariant.
fn hessenberg<R: Real>(t: &mut ComplexMatrix<R>, q: &mut ComplexMatrix<R>) {
    let n = t.rows();
    for k in 0..n.saturating_sub(2) {
        // Reflector annihilating column k below the subdiagonal.
        let mut xnorm_sqr = R::zero();
        for i in (k + 1)..n {
            xnorm_sqr += t[(i, k)].norm_sqr();
        }
        let xnorm = xnorm_sqr.sqrt();
        if xnorm == R::zero() {
            continue;
        }
        let x0 = t[(k + 1, k)];
        let x0n = x0.norm();
        let phase = if x0n == R::zero() { c(R::one(), R::zero()) } else { x0.unscale(x0n) };
        let alpha = -phase.scale(xnorm);

        let mut v = vec![czero::<R>(); n];
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = t[(i, k)];
        }
        let vnorm_sqr: R = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == R::zero() {
            continue;
        }
        let beta = real::<R>(2.0) / vnorm_sqr;

        // T <- P T with P = I - beta v v^dag (P Hermitian, unitary).
        for j in 0..n {
            let mut dot = czero::<R>();
            for i in (k + 1)..n {
                dot += v[i].conj() * t[(i, j)];
            }
            let dot = dot.scale(beta);
            for i in (k + 1)..n {
                t[(i, j)] -= v[i] * dot;
            }
        }
        // T <- T P.
        for i in 0..n {
            let mut dot = czero::<R>();
            for j in (k + 1)..n {
                dot += t[(i, j)] * v[j];
            }
            let dot = dot.scale(beta);
            for j in (k + 1)..n {
                t[(i, j)] -= dot * v[j].conj();
            }
        }
        // Q <- Q P.
        for i in 0..n {
            let mut dot = czero::<R>();
            for j in (k + 1)..n {
                dot += q[(i, j)] * v[j];
            }
            let dot = dot.scale(beta);
            for j in (k + 1)..n {
                q[(i, j)] -= dot * v[j].conj();
            }
        }
        // Entries below the subdiagonal are now zero by construction.
        for i in (k + 2)..n {
            t[(i, k)] = czero();
        }
    }
}

/// General (bi-orthogonal) eigendecomposition.
#[derive(Debug, Clone)]
pub struct Eigen<R: Real> {
    /// Eigenvalues in Schur order.
    pub values: Vec<Complex<R>>,
    /// Unit-norm right eigenvectors: `A r_k = gamma_k r_k`.
    pub right: Vec<Vec<Complex<R>>>,
    /// Left eigenvectors scaled so `l_j^dag r_k = delta_jk`.
    pub left: Vec<Vec<Complex<R>>>,
}

/// Solve the full non-Hermitian eigenproblem of a square matrix.
///
/// Errors with [`Error::Defective`] when bi-orthogonal normalization would
/// divide by `|l^dag r| < 1e-10` (unit-norm vectors), i.e. when the matrix is
/// not numerically diagonalizable.
pub fn eig_general<R: Real>(a: &ComplexMatrix<R>) -> Result<Eigen<R>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let n = a.rows();
    let (q, t) = schur(a)?;
    let tnorm = t.max_abs().max(R::min_positive_value());
    let smallden = tnorm * R::epsilon();
    let defect_tol = atol::<R>(1e-10);

    let mut values = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let mut left = Vec::with_capacity(n);

    for k in 0..n {
        let lam = t[(k, k)];
        values.push(lam);

        // Right eigenvector of T by back-substitution on (T - lam) y = 0.
        let mut y = vec![czero::<R>(); n];
        y[k] = c(R::one(), R::zero());
        for j in (0..k).rev() {
            let mut num = czero::<R>();
            for l in (j + 1)..=k {
                num += t[(j, l)] * y[l];
            }
            let mut den = t[(j, j)] - lam;
            if den.norm() < smallden {
                den = c(smallden, R::zero());
            }
            y[j] = -num / den;
        }
        let mut r_vec = apply_columns(&q, &y);
        let rn = vec_norm(&r_vec);
        scale_vec(&mut r_vec, R::one() / rn);

        // Left eigenvector: u^T (T - lam) = 0 by forward substitution, then
        // l = Q conj(u).
        let mut u = vec![czero::<R>(); n];
        u[k] = c(R::one(), R::zero());
        for j in (k + 1)..n {
            let mut num = czero::<R>();
            for l in k..j {
                num += u[l] * t[(l, j)];
            }
            let mut den = t[(j, j)] - lam;
            if den.norm() < smallden {
                den = c(smallden, R::zero());
            }
            u[j] = -num / den;
        }
        let w: Vec<Complex<R>> = u.iter().map(|z| z.conj()).collect();
        let mut l_vec = apply_columns(&q, &w);
        let ln = vec_norm(&l_vec);
        scale_vec(&mut l_vec, R::one() / ln);

        let overlap = dot_dagger(&l_vec, &r_vec);
        if overlap.norm() < defect_tol {
            return Err(Error::Defective {
                index: k,
                overlap: overlap.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
        // Rescale the left vector so l^dag r = 1.
        let factor = (Complex::new(R::one(), R::zero()) / overlap).conj();
        for z in l_vec.iter_mut() {
            *z *= factor;
        }

        right.push(r_vec);
        left.push(l_vec);
    }

    Ok(Eigen { values, right, left })
}

fn apply_columns<R: Real>(q: &ComplexMatrix<R>, y: &[Complex<R>]) -> Vec<Complex<R>> {
    q.matvec(y)
}

fn vec_norm<R: Real>(v: &[Complex<R>]) -> R {
    v.iter().map(|z| z.norm_sqr()).sum::<R>().sqrt()
}

fn scale_vec<R: Real>(v: &mut [Complex<R>], s: R) {
    for z in v.iter_mut() {
        *z = z.scale(s);
    }
}

fn dot_dagger<R: Real>(l: &[Complex<R>], r: &[Complex<R>]) -> Complex<R> {
    l.iter()
        .zip(r.iter())
        .map(|(a, b)| a.conj() * *b)
        .fold(czero(), |acc, z| acc + z)
}
