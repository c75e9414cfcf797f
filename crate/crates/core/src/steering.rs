//! Parameter design: choose the measurement interval, freezing strength and
//! Lamb-Dicke parameters so that a prefixed target subspace survives the
//! conditioned evolution.

use crate::distill::{
    channel_report, closed_form_propagator, conditional_propagator, spectral_decompose,
    ChannelReport,
};
use crate::error::{Error, Result};
use crate::hilbert::expm_unitary;
use crate::models::{
    build_chain, build_trapped_ion, channel_couplings, lamb_dicke_factor, laguerre, ChainParams,
    TrappedIonParams, MASTER_G,
};
use crate::scalar::{atol, real, Real};

/// Measurement interval that makes number state `n_bar` the unique survivor
/// of the bare (no freezing) conditioning: `|cos(Omega f0(n_bar) tau)| = 1`.
///
/// Errors with [`Error::DarkTarget`] when `f0(n_bar, eta1)` vanishes: no
/// interval can preserve a dark channel.
pub fn design_qnd_tau<R: Real>(n_bar: usize, omega: R, eta1: R) -> Result<R> {
    if !omega.is_finite() || omega <= R::zero() {
        return Err(Error::InvalidParameter("omega must be positive".into()));
    }
    let f0 = lamb_dicke_factor(0, n_bar, eta1)?;
    if f0.abs() <= atol::<R>(1e-12) {
        return Err(Error::DarkTarget { n_bar, value: f0.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(R::PI() / (omega * f0.abs()))
}

/// The `branch`-th positive zero (0 = smallest) of `f0(n_bar, .)`, i.e. the
/// square root of a Laguerre root, located by sign bracketing and bisection.
///
/// Errors with [`Error::NoZeroExists`] for `n_bar = 0`, where
/// `f0(0, eta) = exp(-eta^2/2)` is strictly positive.
pub fn find_eta_zero<R: Real>(n_bar: usize, branch: usize) -> Result<R> {
    if n_bar == 0 {
        return Err(Error::NoZeroExists { n_bar });
    }
    // All roots of L_n lie in (0, 4n + 2); consecutive roots are separated by
    // more than ~7/n there, so a step of 1/(2n) cannot straddle two roots.
    let steps = 2 * n_bar * (4 * n_bar + 3);
    let step = real::<R>(1.0 / (2.0 * n_bar as f64));
    let g = |x: R| laguerre(n_bar, 0, x);

    let mut roots_found = 0usize;
    let mut x_prev = R::zero();
    let mut g_prev = g(x_prev); // L_n(0) = 1 > 0
    for k in 1..=steps {
        let x = step * real::<R>(k as f64);
        let gx = g(x);
        if gx == R::zero() {
            // Root exactly on the grid.
            if roots_found == branch {
                return Ok(x.sqrt());
            }
            roots_found += 1;
            // Re-seed just past the simple root, where the sign has flipped.
            x_prev = x + step * real::<R>(1e-3);
            g_prev = g(x_prev);
            continue;
        }
        if (g_prev > R::zero()) != (gx > R::zero()) {
            if roots_found == branch {
                let root = bisect_root(x_prev, x, g_prev, g);
                return Ok(root.sqrt());
            }
            roots_found += 1;
        }
        x_prev = x;
        g_prev = gx;
    }
    Err(Error::InvalidParameter(format!(
        "branch {branch} requested but f0({n_bar}, .) has only {roots_found} positive zeroes"
    )))
}

/// Bisection on a sign-changing bracket; compares signs (never products, which
/// can underflow to zero near a root).
fn bisect_root<R: Real>(mut a: R, mut b: R, mut ga: R, g: impl Fn(R) -> R) -> R {
    let half = real::<R>(0.5);
    for _ in 0..200 {
        let mid = (a + b) * half;
        if mid == a || mid == b {
            break;
        }
        let gm = g(mid);
        if gm == R::zero() {
            return mid;
        }
        if (ga > R::zero()) == (gm > R::zero()) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    (a + b) * half
}

/// Fine-tuning diagnosis for one low channel.
#[derive(Debug, Clone, PartialEq)]
pub struct FineTuningChannel<R: Real> {
    pub fock_index: usize,
    /// Nearest interval at which this channel accidentally survives with
    /// `|cos| = 1`; `None` for dark channels.
    pub nearest_bad_tau: Option<R>,
    /// Relative distance from `tau` to the nearest bad interval.
    pub relative_distance: Option<R>,
    /// The channel's `f0` vanishes: it contributes no bad interval.
    pub dark: bool,
}

/// Result of checking a measurement interval against accidental survivals.
#[derive(Debug, Clone, PartialEq)]
pub struct FineTuningReport<R: Real> {
    pub ok: bool,
    pub channels: Vec<FineTuningChannel<R>>,
}

/// Check that `tau` avoids every interval `k pi / (Omega f0(j, eta1))`,
/// `j < q`, `k >= 1`, at which an intended-open low channel would survive a
/// detection with unit probability. `ok` iff the minimum relative distance
/// exceeds `rel_tol`.
pub fn fine_tuning_check<R: Real>(
    tau: R,
    omega: R,
    eta1: R,
    q: usize,
    rel_tol: R,
) -> Result<FineTuningReport<R>> {
    if q == 0 {
        return Err(Error::InvalidParameter("fine-tuning check needs q >= 1".into()));
    }
    if !tau.is_finite() || tau <= R::zero() {
        return Err(Error::InvalidParameter("tau must be positive".into()));
    }
    if !omega.is_finite() || omega <= R::zero() {
        return Err(Error::InvalidParameter("omega must be positive".into()));
    }
    let mut channels = Vec::with_capacity(q);
    let mut ok = true;
    for j in 0..q {
        let f0 = lamb_dicke_factor(0, j, eta1)?;
        if f0.abs() <= atol::<R>(1e-12) {
            channels.push(FineTuningChannel {
                fock_index: j,
                nearest_bad_tau: None,
                relative_distance: None,
                dark: true,
            });
            continue;
        }
        let period = R::PI() / (omega * f0.abs());
        // Enumerate k = 1, 2, ... up to the first bad value exceeding
        // tau (1 + rel_tol); track the nearest.
        let mut best_bad = period;
        let mut best_dist = ((tau - period) / period).abs();
        let mut k = 2u64;
        loop {
            let prev_bad = real::<R>((k - 1) as f64) * period;
            if prev_bad > tau * (R::one() + rel_tol) {
                break;
            }
            let bad = real::<R>(k as f64) * period;
            let dist = ((tau - bad) / bad).abs();
            if dist < best_dist {
                best_dist = dist;
                best_bad = bad;
            }
            k += 1;
        }
        if best_dist <= rel_tol {
            ok = false;
        }
        channels.push(FineTuningChannel {
            fock_index: j,
            nearest_bad_tau: Some(best_bad),
            relative_distance: Some(best_dist),
            dark: false,
        });
    }
    Ok(FineTuningReport { ok, channels })
}

/// Default relative tolerance of [`fine_tuning_check`].
pub fn default_rel_tol<R: Real>() -> R {
    real::<R>(1e-2)
}

/// Advisory conditions attached to a steering plan.
#[derive(Debug, Clone, PartialEq)]
pub enum SteeringWarning {
    /// The interval coincides (within `rel_tol`) with an accidental-survival
    /// value of an intended-open channel.
    ResonantInterval { fock_index: usize, bad_tau: f64 },
    /// A freezing coupling is too weak (`K_n / Omega_n < 10`) to guarantee
    /// closure of its channel.
    WeakFreezing { fock_index: usize, ratio: f64 },
    /// Fock truncation removed a coupling partner, changing these channels
    /// relative to the untruncated model.
    TruncationAffected { fock_indices: Vec<usize> },
}

impl std::fmt::Display for SteeringWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SteeringWarning::ResonantInterval { fock_index, bad_tau } => write!(
                f,
                "tau is within tolerance of an accidental-survival interval {bad_tau:e} of channel {fock_index}"
            ),
            SteeringWarning::WeakFreezing { fock_index, ratio } => write!(
                f,
                "freezing ratio K_n/Omega_n = {ratio:.3} < 10 on channel {fock_index}; closure not guaranteed"
            ),
            SteeringWarning::TruncationAffected { fock_indices } => write!(
                f,
                "Fock truncation removes coupling partners of channels {fock_indices:?}"
            ),
        }
    }
}

/// A declarative steering plan: model parameters, interval, the predicted
/// surviving set, and any advisory warnings. Plans never mutate the model;
/// callers feed them back into the conditioning engine.
#[derive(Debug, Clone)]
pub struct SteeringPlan<R: Real> {
    pub params: TrappedIonParams<R>,
    pub tau: R,
    /// Fock indices predicted to be preserved (the closed channels).
    pub target_indices: Vec<usize>,
    pub predicted_report: ChannelReport<R>,
    pub warnings: Vec<SteeringWarning>,
}

/// Predict which Fock channels a given `(params, tau)` pair preserves.
///
/// Uses the closed-form propagator for `p = 0` and the numeric propagator
/// otherwise. Warnings flag fine-tuned intervals, weak freezing ratios and
/// truncation-clipped channels.
pub fn predict_target_projector<R: Real>(
    params: &TrappedIonParams<R>,
    tau: R,
    tol_closed: R,
) -> Result<SteeringPlan<R>> {
    params.validate()?;
    let v = if params.p == 0 {
        closed_form_propagator(params, tau)?
    } else {
        let model = build_trapped_ion(params)?;
        conditional_propagator(&model, MASTER_G, tau)?
    };
    let decomp = spectral_decompose(&v)?;
    let report = channel_report(&decomp, tol_closed);
    let target_indices = report.closed_indices();

    let mut warnings = Vec::new();

    if params.p == 0 && params.q > 0 {
        let check = fine_tuning_check(
            tau,
            params.omega,
            params.eta1,
            params.q as usize,
            default_rel_tol::<R>(),
        )?;
        if !check.ok {
            for ch in &check.channels {
                if let (Some(dist), Some(bad)) = (ch.relative_distance, ch.nearest_bad_tau) {
                    if dist <= default_rel_tol::<R>() {
                        warnings.push(SteeringWarning::ResonantInterval {
                            fock_index: ch.fock_index,
                            bad_tau: bad.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                }
            }
        }
    }

    let couplings = channel_couplings(params)?;
    let weak_threshold = real::<R>(10.0);
    for (n, &(omega_n, kappa_n)) in couplings.iter().enumerate() {
        if kappa_n != R::zero() && omega_n > R::zero() && kappa_n / omega_n < weak_threshold {
            warnings.push(SteeringWarning::WeakFreezing {
                fock_index: n,
                ratio: (kappa_n / omega_n).to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    let clipped = truncation_clipped_channels(params);
    if !clipped.is_empty() {
        warnings.push(SteeringWarning::TruncationAffected { fock_indices: clipped });
    }

    Ok(SteeringPlan { params: *params, tau, target_indices, predicted_report: report, warnings })
}

/// Channels whose coupling partner exists in the untruncated model but falls
/// above `n_max` (losses below the vacuum are physics, not truncation).
fn truncation_clipped_channels<R: Real>(params: &TrappedIonParams<R>) -> Vec<usize> {
    let n_max = params.n_max as i64;
    let mut out = Vec::new();
    for n in 0..=params.n_max {
        let m1 = n as i64 - params.p as i64;
        if m1 < 0 {
            continue;
        }
        if m1 > n_max {
            out.push(n);
            continue;
        }
        let m2 = m1 - params.q as i64;
        if m2 > n_max {
            out.push(n);
        }
    }
    out
}

/// Base model of a freezing-strength sweep.
#[derive(Debug, Clone)]
pub enum SweepModel<R: Real> {
    /// Sweep the ion model's `kappa`.
    TrappedIon(TrappedIonParams<R>),
    /// Sweep the second coupling of a chain (index 1), conditioning on
    /// level 0.
    Chain(ChainParams<R>),
}

/// One row of a freezing sweep: survival of a channel at one grid value.
#[derive(Debug, Clone, PartialEq)]
pub struct ZenoSweepRow<R: Real> {
    pub kappa: R,
    pub fock_index: usize,
    pub survival: R,
}

fn check_grid<R: Real>(grid: &[R], name: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter(format!("{name} grid is empty")));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} grid must be finite")));
    }
    for w in grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidParameter(format!("{name} grid must be ascending")));
        }
    }
    Ok(())
}

/// Per-channel survival probability as a function of freezing strength, at a
/// fixed interval. Grid points are independent; rows come back in grid-major
/// order.
pub fn zeno_sweep<R: Real>(
    base: &SweepModel<R>,
    kappa_grid: &[R],
    tau: R,
) -> Result<Vec<ZenoSweepRow<R>>> {
    check_grid(kappa_grid, "kappa")?;
    let mut rows = Vec::new();
    match base {
        SweepModel::TrappedIon(params) => {
            for &kappa in kappa_grid {
                if kappa < R::zero() {
                    return Err(Error::InvalidParameter("kappa must be nonnegative".into()));
                }
                let p = TrappedIonParams { kappa, ..*params };
                let v = if p.p == 0 {
                    closed_form_propagator(&p, tau)?
                } else {
                    conditional_propagator(&build_trapped_ion(&p)?, MASTER_G, tau)?
                };
                let report =
                    channel_report(&spectral_decompose(&v)?, crate::distill::default_tol_closed());
                for entry in &report.entries {
                    rows.push(ZenoSweepRow {
                        kappa,
                        fock_index: entry.fock_index,
                        survival: entry.survival,
                    });
                }
            }
        }
        SweepModel::Chain(chain) => {
            if chain.couplings.len() < 2 {
                return Err(Error::InvalidParameter(
                    "chain sweep needs at least two couplings".into(),
                ));
            }
            for &kappa in kappa_grid {
                let mut couplings = chain.couplings.clone();
                couplings[1] = num_complex::Complex::new(kappa, R::zero());
                let model = build_chain(&ChainParams::new(couplings)?)?;
                let v = conditional_propagator(&model, 0, tau)?;
                let survival = v.matrix()[(0, 0)].norm_sqr();
                rows.push(ZenoSweepRow { kappa, fock_index: 0, survival });
            }
        }
    }
    Ok(rows)
}

/// One row of a hierarchy sweep over (freezing, unfreezing) strengths.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchySweepRow<R: Real> {
    pub kappa: R,
    pub lambda: R,
    /// `|<0| U(tau) |0>|^2`
    pub survival: R,
    /// `|<1| U(tau) |0>|^2`
    pub transfer: R,
}

/// Level-0 survival and level-0 -> 1 transfer of a 4-level (or longer) chain
/// over a grid of second and third coupling strengths. The corners realize
/// the freezing regime (`kappa >> Omega`, `lambda = 0`: survival near 1) and
/// the unfreezing regime (`lambda >> kappa >> Omega`: bare Rabi transfer
/// restored).
pub fn hierarchy_sweep<R: Real>(
    template: &ChainParams<R>,
    kappa_grid: &[R],
    lambda_grid: &[R],
    tau: R,
) -> Result<Vec<HierarchySweepRow<R>>> {
    if template.couplings.len() < 3 {
        return Err(Error::InvalidParameter(
            "hierarchy sweep needs a chain with at least three couplings".into(),
        ));
    }
    check_grid(kappa_grid, "kappa")?;
    check_grid(lambda_grid, "lambda")?;
    if !tau.is_finite() || tau < R::zero() {
        return Err(Error::InvalidParameter("tau must be finite and nonnegative".into()));
    }
    let mut rows = Vec::with_capacity(kappa_grid.len() * lambda_grid.len());
    for &kappa in kappa_grid {
        for &lambda in lambda_grid {
            let mut couplings = template.couplings.clone();
            couplings[1] = num_complex::Complex::new(kappa, R::zero());
            couplings[2] = num_complex::Complex::new(lambda, R::zero());
            let model = build_chain(&ChainParams::new(couplings)?)?;
            let u = expm_unitary(&model.matrix, tau)?;
            rows.push(HierarchySweepRow {
                kappa,
                lambda,
                survival: u[(0, 0)].norm_sqr(),
                transfer: u[(1, 0)].norm_sqr(),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distill::default_tol_closed;

    #[test]
    fn qnd_tau_carrier_limit() {
        // eta1 -> 0: f0 -> 1, tau = pi / Omega.
        let tau = design_qnd_tau(0, 1.0, 0.0).unwrap();
        assert!((tau - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn qnd_tau_dark_target() {
        assert!(matches!(design_qnd_tau(1, 1.0, 1.0), Err(Error::DarkTarget { n_bar: 1, .. })));
    }

    #[test]
    fn qnd_tau_postcondition() {
        for (n_bar, omega, eta1) in [(2usize, 2.0_f64, 0.3_f64), (3, 0.7, 0.5), (5, 1.0, 0.25)] {
            let tau = design_qnd_tau(n_bar, omega, eta1).unwrap();
            let f0 = lamb_dicke_factor(0, n_bar, eta1).unwrap();
            assert!(((omega * f0 * tau).cos().abs() - 1.0).abs() < 1e-10);
            assert!(tau > 0.0);
        }
    }

    #[test]
    fn eta_zero_first_roots() {
        // L_1(x) = 1 - x: eta = 1.
        let eta = find_eta_zero::<f64>(1, 0).unwrap();
        assert!((eta - 1.0).abs() < 1e-12);
        // L_2 roots x = 2 -+ sqrt(2).
        let eta = find_eta_zero::<f64>(2, 0).unwrap();
        assert!((eta - (2.0 - 2.0_f64.sqrt()).sqrt()).abs() < 1e-12);
        let eta2 = find_eta_zero::<f64>(2, 1).unwrap();
        assert!((eta2 - (2.0 + 2.0_f64.sqrt()).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn eta_zero_none_for_vacuum() {
        assert!(matches!(find_eta_zero::<f64>(0, 0), Err(Error::NoZeroExists { n_bar: 0 })));
    }

    #[test]
    fn eta_zero_value_and_sign_change() {
        for n_bar in 1..=6usize {
            for branch in 0..n_bar {
                let eta = find_eta_zero::<f64>(n_bar, branch).unwrap();
                let f = lamb_dicke_factor(0, n_bar, eta).unwrap();
                assert!(f.abs() < 1e-12, "f0({n_bar}, {eta}) = {f}");
                let lo = lamb_dicke_factor(0, n_bar, eta - 1e-6).unwrap();
                let hi = lamb_dicke_factor(0, n_bar, eta + 1e-6).unwrap();
                assert!(lo * hi < 0.0, "no sign change across root {branch} of n={n_bar}");
            }
            // one past the last root is an error
            assert!(find_eta_zero::<f64>(n_bar, n_bar).is_err());
        }
    }

    #[test]
    fn fine_tuning_examples() {
        // tau = pi is exactly the first bad interval of the carrier channel.
        let r = fine_tuning_check(std::f64::consts::PI, 1.0, 0.0, 1, 1e-3).unwrap();
        assert!(!r.ok);
        // tau = 1.0 is far from every multiple of pi.
        let r = fine_tuning_check(1.0, 1.0, 0.0, 1, 1e-3).unwrap();
        assert!(r.ok);
        // near pi / f0(1, 0.3): channel j = 1 flags.
        let f1 = lamb_dicke_factor(0, 1, 0.3).unwrap();
        let bad = std::f64::consts::PI / f1;
        let r = fine_tuning_check(bad * 1.0005, 1.0, 0.3, 2, 1e-2).unwrap();
        assert!(!r.ok);
        let flagged: Vec<usize> = r
            .channels
            .iter()
            .filter(|c| c.relative_distance.map(|d| d <= 1e-2).unwrap_or(false))
            .map(|c| c.fock_index)
            .collect();
        assert_eq!(flagged, vec![1]);
    }

    #[test]
    fn fine_tuning_dark_channel_noted() {
        // eta1 = 1 makes f0(1, .) = 0: channel 1 contributes no bad interval.
        let r = fine_tuning_check(1.0, 1.0, 1.0, 2, 1e-2).unwrap();
        assert!(r.channels[1].dark);
        assert!(r.channels[1].nearest_bad_tau.is_none());
    }

    #[test]
    fn predict_qnd_single_state() {
        // kappa = 0, tau = tau_nbar: the target, and it only, survives.
        let params = TrappedIonParams {
            omega: 1.0,
            kappa: 0.0,
            p: 0,
            q: 0,
            eta1: 0.3,
            eta2: 0.0,
            n_max: 10,
        };
        let tau = design_qnd_tau(2, params.omega, params.eta1).unwrap();
        let plan = predict_target_projector(&params, tau, default_tol_closed()).unwrap();
        assert_eq!(plan.target_indices, vec![2]);
    }

    #[test]
    fn predict_low_channel_elimination() {
        // q = 2, strong freezing, small eta2: all n >= 2 survive.
        let params = TrappedIonParams {
            omega: 1.0,
            kappa: 100.0,
            p: 0,
            q: 2,
            eta1: 0.3,
            eta2: 0.01,
            n_max: 12,
        };
        let plan = predict_target_projector(&params, 1.0, default_tol_closed()).unwrap();
        assert_eq!(plan.target_indices, (2..=12).collect::<Vec<_>>());
        assert!(plan.warnings.is_empty(), "unexpected warnings: {:?}", plan.warnings);
    }

    #[test]
    fn predict_complement_of_single_state() {
        // p = q = 0, eta2 at the Laguerre zero of the target: everything but
        // n_bar survives.
        let n_bar = 1usize;
        let eta2 = find_eta_zero::<f64>(n_bar, 0).unwrap();
        let params = TrappedIonParams {
            omega: 1.0,
            kappa: 100.0,
            p: 0,
            q: 0,
            eta1: 0.3,
            eta2,
            n_max: 5,
        };
        let plan = predict_target_projector(&params, 1.0, default_tol_closed()).unwrap();
        let expect: Vec<usize> = (0..=5).filter(|&n| n != n_bar).collect();
        assert_eq!(plan.target_indices, expect);

        // Larger truncations run into other near-roots of the Laguerre
        // polynomial (|L_7(1)| ~ 0.04): those channels are only weakly frozen
        // and the plan must say so.
        let wide = TrappedIonParams { n_max: 8, ..params };
        let plan = predict_target_projector(&wide, 1.0, default_tol_closed()).unwrap();
        assert!(plan
            .warnings
            .iter()
            .any(|w| matches!(w, SteeringWarning::WeakFreezing { fock_index: 7, .. })));
        assert!(!plan.target_indices.contains(&7));
    }

    #[test]
    fn predict_warns_on_resonant_interval() {
        // tau exactly at pi / (Omega f0(0, eta1)): channel 0 accidentally
        // survives its own elimination.
        let params = TrappedIonParams {
            omega: 1.0,
            kappa: 200.0,
            p: 0,
            q: 1,
            eta1: 0.3,
            eta2: 0.01,
            n_max: 6,
        };
        let f0 = lamb_dicke_factor(0, 0, params.eta1).unwrap();
        let tau = std::f64::consts::PI / f0;
        let plan = predict_target_projector(&params, tau, default_tol_closed()).unwrap();
        assert!(plan
            .warnings
            .iter()
            .any(|w| matches!(w, SteeringWarning::ResonantInterval { fock_index: 0, .. })));
        // the resonant channel really does survive
        assert!(plan.target_indices.contains(&0));
    }

    #[test]
    fn predict_warns_on_truncation_clipped_channels() {
        // A red-sideband freezing coupling reaches upward: the top channels
        // lose their partner to the truncation and stay unprotected.
        let params = TrappedIonParams {
            omega: 1.0,
            kappa: 100.0,
            p: 0,
            q: -2,
            eta1: 0.3,
            eta2: 0.01,
            n_max: 4,
        };
        let plan = predict_target_projector(&params, 1.0, default_tol_closed()).unwrap();
        let clipped = plan.warnings.iter().find_map(|w| match w {
            SteeringWarning::TruncationAffected { fock_indices } => Some(fock_indices.clone()),
            _ => None,
        });
        assert_eq!(clipped, Some(vec![3, 4]));
        assert!(!plan.target_indices.contains(&3));
        assert!(!plan.target_indices.contains(&4));
    }

    #[test]
    fn zeno_sweep_kappa_zero_matches_bare_cosines() {
        let params = TrappedIonParams {
            omega: 1.0,
            kappa: 0.0,
            p: 0,
            q: 1,
            eta1: 0.4,
            eta2: 0.05,
            n_max: 5,
        };
        let tau = 0.9_f64;
        let rows = zeno_sweep(&SweepModel::TrappedIon(params), &[0.0, 5.0, 50.0], tau).unwrap();
        for row in rows.iter().filter(|r| r.kappa == 0.0) {
            let f0: f64 = lamb_dicke_factor(0, row.fock_index, params.eta1).unwrap();
            let expect = (params.omega * f0 * tau).cos().powi(2);
            assert!((row.survival - expect).abs() < 1e-12);
        }
        // freezing monotonicity at the top of the grid for channels the
        // freezing term acts on (n >= q = 1)
        for n in 1..=5usize {
            let at = |k: f64| {
                rows.iter()
                    .find(|r| r.kappa == k && r.fock_index == n)
                    .map(|r| r.survival)
                    .unwrap()
            };
            assert!(at(50.0) > at(0.0) - 1e-12, "channel {n} not frozen");
        }
    }

    #[test]
    fn zeno_sweep_rejects_descending_grid() {
        let chain = ChainParams::from_reals(&[1.0, 0.0]).unwrap();
        assert!(zeno_sweep(&SweepModel::Chain(chain), &[1.0, 0.5], 1.0).is_err());
    }

    #[test]
    fn hierarchy_corners() {
        let template = ChainParams::from_reals(&[1.0, 0.0, 0.0]).unwrap();
        let tau = std::f64::consts::FRAC_PI_2;
        // kappa = lambda = 0: bare Rabi.
        let rows = hierarchy_sweep(&template, &[0.0], &[0.0], tau).unwrap();
        assert!((rows[0].survival - tau.cos().powi(2)).abs() < 1e-12);
        assert!((rows[0].transfer - tau.sin().powi(2)).abs() < 1e-12);
    }
}
