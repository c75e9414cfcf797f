//! The conditioning engine: the non-unitary Slave propagator obtained by
//! repeatedly finding the Master in a fixed state, its spectral structure,
//! per-channel survival analysis, and the N-step conditioned evolution.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hilbert::{eig_general, expm_unitary, schur, ComplexMatrix, StateVector};
use crate::models::{channel_couplings, HamiltonianModel, TrappedIonParams, MASTER_G};
use crate::scalar::{atol, prob_floor, real, Real};

/// The Slave-space contraction `V(tau) = <phi_0| exp(-i H tau) |phi_0>`
/// together with the Master state it was conditioned on.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalPropagator<R: Real> {
    matrix: ComplexMatrix<R>,
    conditioned_master_index: usize,
    tau: R,
}

impl<R: Real> ConditionalPropagator<R> {
    /// Wrap a Slave-space matrix, enforcing the contraction property
    /// (largest singular value at most `1 + 1e-10`).
    pub fn new(matrix: ComplexMatrix<R>, conditioned_master_index: usize, tau: R) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        let sigma = matrix.max_singular_value()?;
        if sigma > R::one() + atol::<R>(1e-10) {
            return Err(Error::NotContraction { sigma: sigma.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(Self { matrix, conditioned_master_index, tau })
    }

    pub fn matrix(&self) -> &ComplexMatrix<R> {
        &self.matrix
    }

    pub fn conditioned_master_index(&self) -> usize {
        self.conditioned_master_index
    }

    pub fn tau(&self) -> R {
        self.tau
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Apply once, without renormalizing.
    pub fn apply_raw(&self, psi: &StateVector<R>) -> Result<StateVector<R>> {
        if psi.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: psi.dim() });
        }
        StateVector::new(self.matrix.matvec(psi.amplitudes()))
    }
}

/// Single-step conditional propagator of a model: evolve the compound system
/// for `tau`, then project the Master onto basis state `master_index`.
pub fn conditional_propagator<R: Real>(
    model: &HamiltonianModel<R>,
    master_index: usize,
    tau: R,
) -> Result<ConditionalPropagator<R>> {
    if !tau.is_finite() || tau < R::zero() {
        return Err(Error::InvalidParameter("tau must be finite and nonnegative".into()));
    }
    let space = model.space;
    if master_index >= space.master_dim() {
        return Err(Error::IndexOutOfRange { index: master_index, bound: space.master_dim() });
    }
    let u = expm_unitary(&model.matrix, tau)?;
    let s = space.slave_dim();
    let mut v = ComplexMatrix::<R>::zeros(s, s);
    for sp in 0..s {
        let row = space.composite_index(master_index, sp)?;
        for sc in 0..s {
            let col = space.composite_index(master_index, sc)?;
            v[(sp, sc)] = u[(row, col)];
        }
    }
    ConditionalPropagator::new(v, master_index, tau)
}

/// Closed-form conditional propagator of the ion model for a carrier first
/// coupling (`p = 0`), conditioned on the ground state. Diagonal in the Fock
/// basis:
///
/// * `K_n = 0` (no freezing partner within truncation, or `n < q`):
///   `v_n = cos(Omega_n tau)`;
/// * otherwise `v_n = (K_n^2 + Omega_n^2 cos(w_n tau)) / w_n^2` with
///   `w_n = sqrt(K_n^2 + Omega_n^2)`.
pub fn closed_form_propagator<R: Real>(
    params: &TrappedIonParams<R>,
    tau: R,
) -> Result<ConditionalPropagator<R>> {
    if params.p != 0 {
        return Err(Error::UnsupportedClosedForm { p: params.p });
    }
    if !tau.is_finite() || tau < R::zero() {
        return Err(Error::InvalidParameter("tau must be finite and nonnegative".into()));
    }
    let couplings = channel_couplings(params)?;
    let s = params.slave_dim();
    let mut v = ComplexMatrix::<R>::zeros(s, s);
    for (n, &(omega_n, kappa_n)) in couplings.iter().enumerate() {
        let w2 = omega_n * omega_n + kappa_n * kappa_n;
        let value = if w2 == R::zero() {
            R::one()
        } else if kappa_n == R::zero() {
            (omega_n * tau).cos()
        } else {
            let w = w2.sqrt();
            (kappa_n * kappa_n + omega_n * omega_n * (w * tau).cos()) / w2
        };
        v[(n, n)] = Complex::new(value, R::zero());
    }
    ConditionalPropagator::new(v, MASTER_G, tau)
}

/// Eigenvalues with spectral projectors: `V = sum_k gamma_k P_k`,
/// `sum_k P_k = 1`, `P_j P_k = delta_jk P_k`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<R: Real> {
    pub eigenvalues: Vec<Complex<R>>,
    pub projectors: Vec<ComplexMatrix<R>>,
    /// Unit-norm right eigenvectors, aligned with `eigenvalues`.
    pub right_vectors: Vec<Vec<Complex<R>>>,
    /// True when `V` commutes with its adjoint; the projectors are then
    /// Hermitian and mutually orthogonal.
    pub is_normal: bool,
}

impl<R: Real> SpectralDecomposition<R> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Diagonalize a conditional propagator.
///
/// Normal operators take the unitary (Schur) path; otherwise bi-orthogonal
/// projectors are built from left/right eigenvector pairs. A numerically
/// defective propagator is an error: the diagonalizability assumption of the
/// protocol does not hold.
pub fn spectral_decompose<R: Real>(
    v: &ConditionalPropagator<R>,
) -> Result<SpectralDecomposition<R>> {
    let m = v.matrix();
    let n = m.rows();
    let commutator = m.dagger().mul(m).sub(&m.mul(&m.dagger()));
    let is_normal = commutator.max_abs() < atol::<R>(1e-10);

    if is_normal {
        let (q, t) = schur(m)?;
        let eigenvalues: Vec<Complex<R>> = (0..n).map(|k| t[(k, k)]).collect();
        let mut projectors = Vec::with_capacity(n);
        let mut right_vectors = Vec::with_capacity(n);
        for k in 0..n {
            let col: Vec<Complex<R>> = (0..n).map(|i| q[(i, k)]).collect();
            let mut p = ComplexMatrix::<R>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    p[(i, j)] = col[i] * col[j].conj();
                }
            }
            projectors.push(p);
            right_vectors.push(col);
        }
        return Ok(SpectralDecomposition { eigenvalues, projectors, right_vectors, is_normal });
    }

    let eig = eig_general(m)?;
    let mut projectors = Vec::with_capacity(n);
    for k in 0..n {
        let mut p = ComplexMatrix::<R>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = eig.right[k][i] * eig.left[k][j].conj();
            }
        }
        projectors.push(p);
    }
    Ok(SpectralDecomposition {
        eigenvalues: eig.values,
        projectors,
        right_vectors: eig.right,
        is_normal,
    })
}

/// Whether a channel survives repeated conditioning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelClass {
    Closed,
    Open,
}

impl std::fmt::Display for ChannelClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChannelClass::Closed => write!(f, "closed"),
            ChannelClass::Open => write!(f, "open"),
        }
    }
}

/// Survival data of one eigen-channel of the propagator.
#[derive(Debug, Clone)]
pub struct ChannelEntry<R: Real> {
    /// Dominant basis component of the eigenvector (the Fock label for
    /// oscillator models, where the propagator is diagonal).
    pub fock_index: usize,
    /// Survival probability `|gamma|^2` per measurement step.
    pub survival: R,
    /// Eigenvalue phase in `(-pi, pi]`.
    pub phase: R,
    pub classification: ChannelClass,
    pub eigenvector: Vec<Complex<R>>,
}

/// Per-channel survival report: each eigenstate of the propagator is a
/// channel of probability loss, open or closed.
#[derive(Debug, Clone)]
pub struct ChannelReport<R: Real> {
    pub entries: Vec<ChannelEntry<R>>,
    pub tol_closed: R,
}

impl<R: Real> ChannelReport<R> {
    /// Fock indices of the closed channels, ascending.
    pub fn closed_indices(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| e.classification == ChannelClass::Closed)
            .map(|e| e.fock_index)
            .collect()
    }
}

/// Classify every channel of a decomposition: survival `|gamma|^2`, phase
/// `arg(gamma)`, closed iff survival is at least `(1 - tol_closed)^2`.
pub fn channel_report<R: Real>(
    decomp: &SpectralDecomposition<R>,
    tol_closed: R,
) -> ChannelReport<R> {
    let threshold = {
        let d = R::one() - tol_closed;
        d * d
    };
    let mut entries: Vec<ChannelEntry<R>> = decomp
        .eigenvalues
        .iter()
        .zip(&decomp.right_vectors)
        .map(|(gamma, vec)| {
            let survival = gamma.norm_sqr();
            let mut phase = gamma.arg();
            if phase <= -R::PI() {
                phase = R::PI();
            }
            let fock_index = vec
                .iter()
                .enumerate()
                .max_by(|(_, a), (_, b)| a.norm_sqr().partial_cmp(&b.norm_sqr()).unwrap())
                .map(|(i, _)| i)
                .unwrap_or(0);
            let classification = if survival >= threshold {
                ChannelClass::Closed
            } else {
                ChannelClass::Open
            };
            ChannelEntry { fock_index, survival, phase, classification, eigenvector: vec.clone() }
        })
        .collect();
    entries.sort_by_key(|e| e.fock_index);
    ChannelReport { entries, tol_closed }
}

/// The subspace surviving infinitely many conditioning steps.
#[derive(Debug, Clone)]
pub struct AsymptoticProjector<R: Real> {
    /// Sum of the spectral projectors of all maximum-modulus eigenvalues.
    pub projector: ComplexMatrix<R>,
    pub dominant_modulus: R,
    /// True iff exactly one eigenvalue attains the maximum modulus.
    pub is_single_state: bool,
    /// Positions (in decomposition order) of the surviving eigenvalues.
    pub surviving: Vec<usize>,
}

/// Large-N limit of the conditioned map: keep every eigenvalue whose modulus
/// is within `degeneracy_tol` (relatively) of the largest.
pub fn asymptotic_projector<R: Real>(
    decomp: &SpectralDecomposition<R>,
    degeneracy_tol: R,
) -> Result<AsymptoticProjector<R>> {
    let gamma = decomp
        .eigenvalues
        .iter()
        .map(|z| z.norm())
        .fold(R::zero(), R::max);
    if gamma < prob_floor::<R>() {
        return Err(Error::NoSurvivingSubspace);
    }
    let cut = gamma * (R::one() - degeneracy_tol);
    let n = decomp.dim();
    let mut projector = ComplexMatrix::<R>::zeros(n, n);
    let mut surviving = Vec::new();
    for (k, z) in decomp.eigenvalues.iter().enumerate() {
        if z.norm() >= cut {
            projector = projector.add(&decomp.projectors[k]);
            surviving.push(k);
        }
    }
    Ok(AsymptoticProjector {
        projector,
        dominant_modulus: gamma,
        is_single_state: surviving.len() == 1,
        surviving,
    })
}

/// Record of an N-step conditioned evolution.
#[derive(Debug, Clone)]
pub struct DistillationRun<R: Real> {
    /// Normalized conditioned states; `states[0]` is the initial state and
    /// `states[i]` the state after `i` successful detections.
    pub states: Vec<StateVector<R>>,
    /// `||V psi_{i-1}||^2` for each step, the probability of the i-th
    /// successful detection.
    pub step_success_probs: Vec<R>,
    /// Product of the step probabilities, `||V^N psi_0||^2`.
    pub cumulative_success: R,
}

impl<R: Real> DistillationRun<R> {
    pub fn steps(&self) -> usize {
        self.step_success_probs.len()
    }

    pub fn final_state(&self) -> &StateVector<R> {
        self.states.last().expect("run holds at least the initial state")
    }
}

/// Iterate `psi <- V psi / ||V psi||` for `n_steps` steps, recording the
/// success probability of every detection.
///
/// The overall normalization of the conditioned map is kept as these recorded
/// probabilities: the cumulative product is exactly the probability that all
/// `N` detections find the conditioned Master state.
///
/// Errors with [`Error::DistillationExtinguished`] (carrying the 1-based step
/// index) when a step annihilates the state, i.e. the conditioning event has
/// vanishing probability.
pub fn apply_conditional<R: Real>(
    v: &ConditionalPropagator<R>,
    psi0: &StateVector<R>,
    n_steps: usize,
) -> Result<DistillationRun<R>> {
    if n_steps == 0 {
        return Err(Error::InvalidParameter("step count must be at least 1".into()));
    }
    if psi0.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: v.dim(), found: psi0.dim() });
    }
    psi0.check_normalized()?;

    let mut states = Vec::with_capacity(n_steps + 1);
    let mut step_success_probs = Vec::with_capacity(n_steps);
    let mut cumulative = R::one();
    states.push(psi0.clone());

    let mut current = psi0.clone();
    for step in 1..=n_steps {
        let raw = v.apply_raw(&current)?;
        let prob = raw.norm_sqr();
        if prob < prob_floor::<R>() {
            return Err(Error::DistillationExtinguished { step });
        }
        current = raw.normalized().expect("norm checked above");
        step_success_probs.push(prob);
        cumulative *= prob;
        states.push(current.clone());
    }

    Ok(DistillationRun { states, step_success_probs, cumulative_success: cumulative })
}

/// `(Omega_n, K_n) -> ` exact per-step survival floor of the freezing branch:
/// `v_n >= (K_n^2 - Omega_n^2) / (K_n^2 + Omega_n^2)`, squared for the
/// probability.
pub fn zeno_survival_floor<R: Real>(omega_n: R, kappa_n: R) -> R {
    let w2 = omega_n * omega_n + kappa_n * kappa_n;
    if w2 == R::zero() {
        return R::one();
    }
    let v_min = (kappa_n * kappa_n - omega_n * omega_n) / w2;
    let floor = v_min.max(-R::one());
    if floor > R::zero() {
        floor * floor
    } else {
        R::zero()
    }
}

/// Default closed-channel tolerance: survival at least `(1 - 1e-3)^2`.
pub fn default_tol_closed<R: Real>() -> R {
    real::<R>(1e-3)
}

/// Default relative tolerance for degenerate dominant moduli.
pub fn default_degeneracy_tol<R: Real>() -> R {
    real::<R>(1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{build_chain, build_trapped_ion, lamb_dicke_factor, ChainParams};
    use num_complex::Complex64;

    type M = ComplexMatrix<f64>;

    fn diag_propagator(entries: &[f64]) -> ConditionalPropagator<f64> {
        let n = entries.len();
        let mut m = M::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        ConditionalPropagator::new(m, 0, 1.0).unwrap()
    }

    #[test]
    fn propagator_at_zero_time_is_identity() {
        let params = ChainParams::from_reals(&[1.0, 2.0]).unwrap();
        let model = build_chain(&params).unwrap();
        let v = conditional_propagator(&model, 0, 0.0).unwrap();
        assert!((v.matrix()[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn slave_independent_rabi() {
        // H = Omega sigma_x (x) 1_S: V = cos(Omega tau) 1_S.
        let omega = 0.8;
        let tau = 0.9;
        let sx = M::new(
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
        let h = M::kron(&sx, &M::identity(3));
        let space = crate::hilbert::BipartiteSpace::new(2, 3).unwrap();
        let model = HamiltonianModel::new(space, h).unwrap();
        let v = conditional_propagator(&model, 0, tau).unwrap();
        let expect = M::identity(3).scale(Complex64::new((omega * tau).cos(), 0.0));
        assert!(v.matrix().max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn qnd_propagator_is_diagonal_cosine() {
        let params = TrappedIonParams {
            omega: 1.3,
            kappa: 0.0,
            p: 0,
            q: 1,
            eta1: 0.4,
            eta2: 0.0,
            n_max: 6,
        };
        let tau = 0.77_f64;
        let model = build_trapped_ion(&params).unwrap();
        let v = conditional_propagator(&model, MASTER_G, tau).unwrap();
        for n in 0..=6usize {
            let f0: f64 = lamb_dicke_factor(0, n, params.eta1).unwrap();
            let expect = (params.omega * f0 * tau).cos();
            assert!(
                (v.matrix()[(n, n)] - Complex64::new(expect, 0.0)).norm() < 1e-11,
                "diagonal entry {n}"
            );
            for m in 0..=6usize {
                if m != n {
                    assert!(v.matrix()[(n, m)].norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn spectral_decompose_diagonal() {
        let v = diag_propagator(&[1.0, 0.5]);
        let d = spectral_decompose(&v).unwrap();
        assert!(d.is_normal);
        assert!((d.eigenvalues[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((d.eigenvalues[1] - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        for (k, p) in d.projectors.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    let expect = if i == k && j == k { 1.0 } else { 0.0 };
                    assert!((p[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn spectral_decompose_rejects_defective_contraction() {
        let m = M::new(
            2,
            2,
            vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(0.4, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let v = ConditionalPropagator::new(m, 0, 1.0).unwrap();
        assert!(matches!(spectral_decompose(&v), Err(Error::Defective { .. })));
    }

    #[test]
    fn apply_conditional_projective_step() {
        let v = diag_propagator(&[1.0, 0.0]);
        let psi0 = StateVector::uniform(2, 0, 1).unwrap();
        let run = apply_conditional(&v, &psi0, 1).unwrap();
        assert!((run.step_success_probs[0] - 0.5).abs() < 1e-15);
        assert!((run.final_state().population(0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn apply_conditional_geometric_suppression() {
        let v = diag_propagator(&[1.0, 0.5]);
        let psi0 = StateVector::uniform(2, 0, 1).unwrap();
        let run = apply_conditional(&v, &psi0, 60).unwrap();
        let target = StateVector::basis_state(2, 0).unwrap();
        assert!(run.final_state().fidelity(&target) > 1.0 - 1e-12);
        assert!((run.cumulative_success - 0.5).abs() < 1e-12);
    }

    #[test]
    fn apply_conditional_extinguishes() {
        let v = diag_propagator(&[0.0, 1.0]);
        let psi0 = StateVector::basis_state(2, 0).unwrap();
        match apply_conditional(&v, &psi0, 3) {
            Err(Error::DistillationExtinguished { step }) => assert_eq!(step, 1),
            other => panic!("expected extinguishment, got {other:?}"),
        }
    }

    #[test]
    fn cumulative_equals_product() {
        let v = diag_propagator(&[0.9, 0.7, 0.4]);
        let psi0 = StateVector::uniform(3, 0, 2).unwrap();
        let run = apply_conditional(&v, &psi0, 12).unwrap();
        let product: f64 = run.step_success_probs.iter().product();
        assert!((run.cumulative_success - product).abs() < 1e-12);
    }

    #[test]
    fn channel_report_classification() {
        let v = diag_propagator(&[1.0, 0.0]);
        let d = spectral_decompose(&v).unwrap();
        let report = channel_report(&d, 1e-3);
        assert_eq!(report.entries[0].classification, ChannelClass::Closed);
        assert!((report.entries[0].survival - 1.0).abs() < 1e-14);
        assert_eq!(report.entries[1].classification, ChannelClass::Open);
        assert_eq!(report.closed_indices(), vec![0]);
    }

    #[test]
    fn asymptotic_projector_cases() {
        // unique dominant modulus
        let mut m = M::zeros(3, 3);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(1, 1)] = Complex64::from_polar(0.8, 1.1);
        m[(2, 2)] = Complex64::new(0.3, 0.0);
        let v = ConditionalPropagator::new(m, 0, 1.0).unwrap();
        let d = spectral_decompose(&v).unwrap();
        let a = asymptotic_projector(&d, 1e-9).unwrap();
        assert!(a.is_single_state);
        assert!((a.projector[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!(a.projector[(1, 1)].norm() < 1e-13);

        // degenerate moduli
        let mut m = M::zeros(3, 3);
        m[(0, 0)] = Complex64::from_polar(1.0, 0.3);
        m[(1, 1)] = Complex64::from_polar(1.0, -0.9);
        m[(2, 2)] = Complex64::new(0.5, 0.0);
        let v = ConditionalPropagator::new(m, 0, 1.0).unwrap();
        let d = spectral_decompose(&v).unwrap();
        let a = asymptotic_projector(&d, 1e-9).unwrap();
        assert!(!a.is_single_state);
        assert_eq!(a.surviving.len(), 2);
        assert!((a.projector[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!((a.projector[(1, 1)] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!(a.projector[(2, 2)].norm() < 1e-13);

        // annihilating propagator
        let v = diag_propagator(&[0.0, 0.0]);
        let d = spectral_decompose(&v).unwrap();
        assert!(matches!(asymptotic_projector(&d, 1e-9), Err(Error::NoSurvivingSubspace)));
    }

    #[test]
    fn closed_form_limits() {
        // kappa = 0 reduces to the cosine form for all n.
        let params = TrappedIonParams {
            omega: 1.1,
            kappa: 0.0,
            p: 0,
            q: 2,
            eta1: 0.35,
            eta2: 0.2,
            n_max: 8,
        };
        let tau = 1.7_f64;
        let v = closed_form_propagator(&params, tau).unwrap();
        for n in 0..=8usize {
            let f0: f64 = lamb_dicke_factor(0, n, params.eta1).unwrap();
            let expect = (params.omega * f0 * tau).cos();
            assert!((v.matrix()[(n, n)].re - expect).abs() < 1e-14);
        }

        // p != 0 unsupported
        let bad = TrappedIonParams { p: 1, ..params };
        assert!(matches!(
            closed_form_propagator(&bad, tau),
            Err(Error::UnsupportedClosedForm { p: 1 })
        ));
    }

    #[test]
    fn zeno_floor_is_exact_bound() {
        // v_n(tau) >= 1 - 2 Omega^2 / w^2 pointwise in tau.
        let omega_n: f64 = 0.6;
        let kappa_n: f64 = 4.0;
        let w = (omega_n * omega_n + kappa_n * kappa_n).sqrt();
        let floor = (kappa_n * kappa_n - omega_n * omega_n) / (w * w);
        for k in 0..200 {
            let tau = 0.05 * k as f64;
            let v = (kappa_n * kappa_n + omega_n * omega_n * (w * tau).cos()) / (w * w);
            assert!(v >= floor - 1e-15);
        }
        assert!((zeno_survival_floor(omega_n, kappa_n) - floor * floor).abs() < 1e-15);
    }
}
