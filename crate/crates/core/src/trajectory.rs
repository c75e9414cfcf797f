//! Monte Carlo simulation of the stochastic measurement protocol: each step
//! evolves the compound system, samples the Master outcome, and keeps the
//! run alive only while every detection finds the conditioned state.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::distill::{apply_conditional, conditional_propagator};
use crate::error::{Error, Result};
use crate::hilbert::{expm_unitary, BipartiteSpace, ComplexMatrix, StateVector};
use crate::models::HamiltonianModel;
use crate::scalar::{real, Real};

/// Outcome record of one stochastic run.
#[derive(Debug, Clone)]
pub struct TrajectoryOutcome<R: Real> {
    pub seed: u64,
    /// Sampled Master index at each completed measurement.
    pub outcomes: Vec<usize>,
    /// True iff every recorded outcome equals the conditioned index.
    pub success: bool,
    pub steps_completed: usize,
    /// Normalized Slave state after the last step, present on success.
    pub final_slave_state: Option<StateVector<R>>,
    /// Collapsed Slave state of the failing branch, recorded on request.
    pub failure_state: Option<StateVector<R>>,
}

/// Options for a trajectory run.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Record the post-failure collapsed state for diagnostics.
    pub record_failure_state: bool,
}

/// Deterministic sub-seed of trajectory `index` under `base` (splitmix64
/// mixing), so trajectories are reproducible and independent of execution
/// order.
pub fn trajectory_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Run one stochastic trajectory of `steps` measurements at interval `tau`,
/// conditioned on Master outcome `master_index`. Deterministic given `seed`.
///
/// A failed detection is a valid outcome, not an error: the run stops at the
/// failing step with `success = false`.
pub fn run_trajectory<R: Real>(
    model: &HamiltonianModel<R>,
    master_index: usize,
    psi0: &StateVector<R>,
    tau: R,
    steps: usize,
    seed: u64,
) -> Result<TrajectoryOutcome<R>> {
    run_trajectory_with(model, master_index, psi0, tau, steps, seed, RunOptions::default())
}

/// [`run_trajectory`] with explicit options.
pub fn run_trajectory_with<R: Real>(
    model: &HamiltonianModel<R>,
    master_index: usize,
    psi0: &StateVector<R>,
    tau: R,
    steps: usize,
    seed: u64,
    opts: RunOptions,
) -> Result<TrajectoryOutcome<R>> {
    validate_inputs(model, master_index, psi0, tau, steps)?;
    let u = expm_unitary(&model.matrix, tau)?;
    Ok(run_with_propagator(&u, model.space, master_index, psi0, steps, seed, opts))
}

fn validate_inputs<R: Real>(
    model: &HamiltonianModel<R>,
    master_index: usize,
    psi0: &StateVector<R>,
    tau: R,
    steps: usize,
) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidParameter("step count must be at least 1".into()));
    }
    if !tau.is_finite() || tau < R::zero() {
        return Err(Error::InvalidParameter("tau must be finite and nonnegative".into()));
    }
    if master_index >= model.space.master_dim() {
        return Err(Error::IndexOutOfRange {
            index: master_index,
            bound: model.space.master_dim(),
        });
    }
    if psi0.dim() != model.space.slave_dim() {
        return Err(Error::DimensionMismatch {
            expected: model.space.slave_dim(),
            found: psi0.dim(),
        });
    }
    psi0.check_normalized()
}

/// Shared fast path: single precomputed compound propagator, many runs.
pub(crate) fn run_with_propagator<R: Real>(
    u: &ComplexMatrix<R>,
    space: BipartiteSpace,
    master_index: usize,
    psi0: &StateVector<R>,
    steps: usize,
    seed: u64,
    opts: RunOptions,
) -> TrajectoryOutcome<R> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let m_dim = space.master_dim();
    let s_dim = space.slave_dim();
    let mut slave: Vec<Complex<R>> = psi0.amplitudes().to_vec();
    let mut outcomes = Vec::with_capacity(steps);

    for _ in 0..steps {
        // Embed |phi_0> (x) psi, evolve, and resolve over Master outcomes.
        let mut composite = vec![Complex::new(R::zero(), R::zero()); m_dim * s_dim];
        composite[master_index * s_dim..(master_index + 1) * s_dim].copy_from_slice(&slave);
        let evolved = u.matvec(&composite);

        let mut probs = vec![R::zero(); m_dim];
        for j in 0..m_dim {
            probs[j] = evolved[j * s_dim..(j + 1) * s_dim]
                .iter()
                .map(|z| z.norm_sqr())
                .sum();
        }
        debug_assert!(
            (probs.iter().copied().sum::<R>() - R::one()).abs() < real::<R>(1e-8),
            "outcome probabilities must resolve unity"
        );

        // Inverse-CDF sampling over the ordered Master indices.
        let draw: R = real::<R>(rng.gen::<f64>());
        let mut cumulative = R::zero();
        let mut outcome = m_dim - 1;
        for (j, &p) in probs.iter().enumerate() {
            cumulative += p;
            if draw < cumulative {
                outcome = j;
                break;
            }
        }
        outcomes.push(outcome);

        // Collapse onto the sampled outcome and renormalize.
        let norm = probs[outcome].sqrt();
        let collapsed: Vec<Complex<R>> = evolved
            [outcome * s_dim..(outcome + 1) * s_dim]
            .iter()
            .map(|z| z.unscale(norm))
            .collect();

        if outcome != master_index {
            let steps_completed = outcomes.len();
            return TrajectoryOutcome {
                seed,
                outcomes,
                success: false,
                steps_completed,
                final_slave_state: None,
                failure_state: if opts.record_failure_state {
                    StateVector::new(collapsed).ok()
                } else {
                    None
                },
            };
        }
        slave = collapsed;
    }

    TrajectoryOutcome {
        seed,
        outcomes,
        success: true,
        steps_completed: steps,
        final_slave_state: StateVector::new(slave).ok(),
        failure_state: None,
    }
}

/// Comparison of the empirical full-success rate against the engine's
/// `||V^N psi_0||^2`.
#[derive(Debug, Clone, Copy)]
pub struct SuccessRateEstimate<R: Real> {
    pub empirical_rate: R,
    pub analytic_rate: R,
    /// `|empirical - analytic| / sqrt(analytic (1 - analytic) / M)`; zero
    /// when the binomial variance vanishes and the rates agree.
    pub z_score: R,
    pub successes: usize,
    pub trials: usize,
}

/// Run `num_trajectories` sub-seeded trajectories and compare the fraction of
/// fully successful ones to the deterministic engine's prediction.
pub fn estimate_success_rate<R: Real>(
    model: &HamiltonianModel<R>,
    master_index: usize,
    psi0: &StateVector<R>,
    tau: R,
    steps: usize,
    num_trajectories: usize,
    base_seed: u64,
) -> Result<SuccessRateEstimate<R>> {
    if num_trajectories < 100 {
        return Err(Error::InvalidParameter(
            "success-rate estimation needs at least 100 trajectories".into(),
        ));
    }
    validate_inputs(model, master_index, psi0, tau, steps)?;

    let analytic_rate = match conditional_propagator(model, master_index, tau)
        .and_then(|v| apply_conditional(&v, psi0, steps))
    {
        // Clamp away contraction roundoff: this is a probability.
        Ok(run) => run.cumulative_success.min(R::one()).max(R::zero()),
        Err(Error::DistillationExtinguished { .. }) => R::zero(),
        Err(e) => return Err(e),
    };

    let u = expm_unitary(&model.matrix, tau)?;
    let mut successes = 0usize;
    for i in 0..num_trajectories {
        let seed = trajectory_seed(base_seed, i as u64);
        let outcome = run_with_propagator(
            &u,
            model.space,
            master_index,
            psi0,
            steps,
            seed,
            RunOptions::default(),
        );
        if outcome.success {
            successes += 1;
        }
    }

    if analytic_rate == R::zero() && successes > 0 {
        return Err(Error::InconsistentStatistics { successes });
    }

    let trials = num_trajectories;
    let empirical_rate = real::<R>(successes as f64) / real::<R>(trials as f64);
    let variance = analytic_rate * (R::one() - analytic_rate) / real::<R>(trials as f64);
    let z_score = if variance > R::zero() {
        (empirical_rate - analytic_rate).abs() / variance.sqrt()
    } else if empirical_rate == analytic_rate {
        R::zero()
    } else {
        R::infinity()
    };

    Ok(SuccessRateEstimate { empirical_rate, analytic_rate, z_score, successes, trials })
}
