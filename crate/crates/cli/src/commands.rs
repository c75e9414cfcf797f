//! The five subcommands. Each one reads the resolved config, runs the
//! engine, and writes deterministic result files.

use std::path::PathBuf;

use serde::Serialize;
use zeno_distill::distill::{
    apply_conditional, asymptotic_projector, channel_report, conditional_propagator,
    spectral_decompose, ChannelReport,
};
use zeno_distill::models::{channel_couplings, ChainParams, TrappedIonParams};
use zeno_distill::steering::{
    design_qnd_tau, find_eta_zero, hierarchy_sweep, predict_target_projector, zeno_sweep,
    SweepModel,
};
use zeno_distill::trajectory::estimate_success_rate;
use zeno_distill::StateVector64;

use crate::config::{ExperimentConfig, ModelSection, SweepSection, TargetSection};
use crate::output::{Cell, OutputTarget, Table};
use crate::CliError;

/// Fidelity columns refer to basis states; channels are labelled by their
/// dominant Fock component.
fn channel_rows(report: &ChannelReport<f64>, couplings: Option<&[(f64, f64)]>) -> Vec<Vec<Cell>> {
    report
        .entries
        .iter()
        .map(|e| {
            let (kappa_n, omega_n) = match couplings {
                Some(c) => {
                    let (o, k) = c[e.fock_index];
                    (Cell::Float(k), Cell::Float(o))
                }
                None => (Cell::Empty, Cell::Empty),
            };
            vec![
                Cell::Int(e.fock_index as u64),
                Cell::Float(e.survival),
                Cell::Float(e.phase),
                Cell::Text(e.classification.to_string()),
                kappa_n,
                omega_n,
            ]
        })
        .collect()
}

fn ion_couplings(config: &ExperimentConfig) -> Result<Option<Vec<(f64, f64)>>, CliError> {
    match &config.model {
        ModelSection::TrappedIon { .. } => {
            Ok(Some(channel_couplings(&config.trapped_ion_params()?)?))
        }
        ModelSection::Chain { .. } => Ok(None),
    }
}

/// Run the conditioned N-step protocol; write the per-step table and the
/// final state.
pub fn cmd_distill(
    config: &ExperimentConfig,
    target: &OutputTarget,
) -> Result<Vec<PathBuf>, CliError> {
    let model = config.build_model()?;
    let psi0 = config.resolve_psi0(model.space.slave_dim())?;
    let v = conditional_propagator(&model, config.protocol.master_index, config.protocol.tau)?;

    let decomp = spectral_decompose(&v)?;
    let report = channel_report(&decomp, config.analysis.tol_closed);
    let mut candidates = report.closed_indices();
    if candidates.is_empty() {
        // fall back to the dominant-modulus subspace
        let asym = asymptotic_projector(&decomp, config.analysis.degeneracy_tol)?;
        candidates = asym
            .surviving
            .iter()
            .map(|&k| report.entries[k].fock_index)
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
    }

    let run = apply_conditional(&v, &psi0, config.protocol.steps)?;

    let mut columns: Vec<String> =
        ["step", "step_success_prob", "cumulative_success"].map(String::from).to_vec();
    for &n in &candidates {
        columns.push(format!("fidelity_{n}"));
    }
    let mut steps_table = Table::new("distill_steps", columns);
    let mut cumulative = 1.0f64;
    for (i, prob) in run.step_success_probs.iter().enumerate() {
        cumulative *= prob;
        let state = &run.states[i + 1];
        let mut row = vec![
            Cell::Int((i + 1) as u64),
            Cell::Float(*prob),
            Cell::Float(cumulative),
        ];
        for &n in &candidates {
            row.push(Cell::Float(state.population(n)));
        }
        steps_table.push(row);
    }

    let mut state_table = Table::with_static_columns(
        "distill_final_state",
        &["index", "re", "im", "probability"],
    );
    for (i, z) in run.final_state().amplitudes().iter().enumerate() {
        state_table.push(vec![
            Cell::Int(i as u64),
            Cell::Float(z.re),
            Cell::Float(z.im),
            Cell::Float(z.norm_sqr()),
        ]);
    }

    Ok(vec![
        target.write_table(&steps_table, config)?,
        target.write_table(&state_table, config)?,
    ])
}

/// Classify every channel of the conditional propagator at the configured
/// interval.
pub fn cmd_channels(
    config: &ExperimentConfig,
    target: &OutputTarget,
) -> Result<Vec<PathBuf>, CliError> {
    let model = config.build_model()?;
    let v = conditional_propagator(&model, config.protocol.master_index, config.protocol.tau)?;
    let report = channel_report(&spectral_decompose(&v)?, config.analysis.tol_closed);
    let couplings = ion_couplings(config)?;

    let mut table = Table::with_static_columns(
        "channels",
        &["n", "survival_prob", "phase", "classification", "kappa_n", "omega_n"],
    );
    for row in channel_rows(&report, couplings.as_deref()) {
        table.push(row);
    }
    Ok(vec![target.write_table(&table, config)?])
}

#[derive(Serialize)]
struct DesignedParams {
    tau: f64,
    omega: f64,
    kappa: f64,
    p: i32,
    q: i32,
    eta1: f64,
    eta2: f64,
    n_max: usize,
}

#[derive(Serialize)]
struct PlanDoc<'a> {
    config: &'a ExperimentConfig,
    designed: DesignedParams,
    target_indices: Vec<usize>,
    warnings: Vec<String>,
    channel_columns: [&'static str; 6],
    channels: Vec<Vec<serde_json::Value>>,
}

/// Design parameters realizing the configured target subspace, emit the plan
/// and a ready-to-run config.
pub fn cmd_steer(
    config: &ExperimentConfig,
    target: &OutputTarget,
) -> Result<Vec<PathBuf>, CliError> {
    let base = config.trapped_ion_params()?;
    let spec = config
        .target
        .as_ref()
        .ok_or_else(|| CliError::Config("steer requires a target section".into()))?;

    let (params, tau) = match spec {
        TargetSection::Single { n_bar } => {
            let tau = design_qnd_tau(*n_bar, base.omega, base.eta1)?;
            (TrappedIonParams { kappa: 0.0, ..base }, tau)
        }
        TargetSection::ComplementRange { q } => {
            if *q == 0 {
                return Err(CliError::Config(
                    "target.q must be at least 1 for a complement-of-range plan".into(),
                ));
            }
            (TrappedIonParams { q: *q as i32, ..base }, config.protocol.tau)
        }
        TargetSection::ComplementSingle { n_bar } => {
            let eta2 = find_eta_zero(*n_bar, 0)?;
            (TrappedIonParams { q: 0, eta2, ..base }, config.protocol.tau)
        }
    };

    let plan = predict_target_projector(&params, tau, config.analysis.tol_closed)?;
    let mut warnings: Vec<String> = plan.warnings.iter().map(|w| w.to_string()).collect();
    match spec {
        TargetSection::Single { n_bar } => {
            if plan.target_indices != vec![*n_bar] {
                warnings.push(format!(
                    "plan does not isolate state {n_bar}: predicted survivors {:?}",
                    plan.target_indices
                ));
            }
        }
        TargetSection::ComplementRange { q } => {
            if plan.target_indices.iter().any(|&n| n < *q) {
                warnings.push(format!("a state below {q} is predicted to survive"));
            }
            if plan.target_indices.len() < params.n_max + 1 - q {
                warnings.push("some states at or above the range bound do not survive".into());
            }
        }
        TargetSection::ComplementSingle { n_bar } => {
            if plan.target_indices.contains(n_bar) {
                warnings.push(format!("state {n_bar} is predicted to survive"));
            }
        }
    }

    let couplings = channel_couplings(&params)?;
    let channels: Vec<Vec<serde_json::Value>> = plan
        .predicted_report
        .entries
        .iter()
        .map(|e| {
            let (omega_n, kappa_n) = couplings[e.fock_index];
            vec![
                serde_json::Value::from(e.fock_index),
                serde_json::Value::from(e.survival),
                serde_json::Value::from(e.phase),
                serde_json::Value::from(e.classification.to_string()),
                serde_json::Value::from(kappa_n),
                serde_json::Value::from(omega_n),
            ]
        })
        .collect();

    let doc = PlanDoc {
        config,
        designed: DesignedParams {
            tau,
            omega: params.omega,
            kappa: params.kappa,
            p: params.p,
            q: params.q,
            eta1: params.eta1,
            eta2: params.eta2,
            n_max: params.n_max,
        },
        target_indices: plan.target_indices.clone(),
        warnings,
        channel_columns: ["n", "survival_prob", "phase", "classification", "kappa_n", "omega_n"],
        channels,
    };

    // A pure config with the designed parameters substituted, directly
    // consumable by `distill --config`.
    let mut runnable = config.clone();
    runnable.model = ModelSection::TrappedIon {
        omega: params.omega,
        kappa: params.kappa,
        p: params.p,
        q: params.q,
        eta1: params.eta1,
        eta2: params.eta2,
        n_max: params.n_max,
    };
    runnable.protocol.tau = tau;
    runnable.target = None;

    Ok(vec![
        target.write_json("plan", &doc)?,
        target.write_json("plan_config", &runnable)?,
    ])
}

/// Freezing-strength or hierarchy sweep.
pub fn cmd_sweep(
    config: &ExperimentConfig,
    target: &OutputTarget,
) -> Result<Vec<PathBuf>, CliError> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("sweep requires a sweep section".into()))?;

    let table = match sweep {
        SweepSection::Zeno { kappa_grid, tau } => {
            let base = match &config.model {
                ModelSection::TrappedIon { .. } => {
                    SweepModel::TrappedIon(config.trapped_ion_params()?)
                }
                ModelSection::Chain { couplings } => SweepModel::Chain(ChainParams::new(
                    couplings.iter().map(|a| a.to_complex()).collect(),
                )?),
            };
            let rows = zeno_sweep(&base, kappa_grid, *tau)?;
            let mut table = Table::with_static_columns("sweep", &["kappa", "n", "survival"]);
            for r in rows {
                table.push(vec![
                    Cell::Float(r.kappa),
                    Cell::Int(r.fock_index as u64),
                    Cell::Float(r.survival),
                ]);
            }
            table
        }
        SweepSection::Hierarchy { kappa_grid, lambda_grid, tau } => {
            let template = match &config.model {
                ModelSection::Chain { couplings } => ChainParams::new(
                    couplings.iter().map(|a| a.to_complex()).collect(),
                )?,
                ModelSection::TrappedIon { .. } => {
                    return Err(CliError::Config(
                        "hierarchy sweep requires a chain model".into(),
                    ))
                }
            };
            let rows = hierarchy_sweep(&template, kappa_grid, lambda_grid, *tau)?;
            let mut table = Table::with_static_columns(
                "sweep",
                &["kappa", "lambda", "survival", "transfer"],
            );
            for r in rows {
                table.push(vec![
                    Cell::Float(r.kappa),
                    Cell::Float(r.lambda),
                    Cell::Float(r.survival),
                    Cell::Float(r.transfer),
                ]);
            }
            table
        }
    };
    Ok(vec![target.write_table(&table, config)?])
}

/// Monte Carlo statistics of the stochastic protocol against the engine's
/// prediction.
pub fn cmd_trajectories(
    config: &ExperimentConfig,
    target: &OutputTarget,
) -> Result<Vec<PathBuf>, CliError> {
    let section = config
        .trajectories
        .as_ref()
        .ok_or_else(|| CliError::Config("trajectories requires a trajectories section".into()))?;
    let model = config.build_model()?;
    let psi0: StateVector64 = config.resolve_psi0(model.space.slave_dim())?;
    let estimate = estimate_success_rate(
        &model,
        config.protocol.master_index,
        &psi0,
        config.protocol.tau,
        config.protocol.steps,
        section.num_trajectories,
        section.base_seed,
    )?;

    let mut table = Table::with_static_columns(
        "trajectories",
        &["num_trajectories", "successes", "empirical_rate", "analytic_rate", "z_score"],
    );
    table.push(vec![
        Cell::Int(estimate.trials as u64),
        Cell::Int(estimate.successes as u64),
        Cell::Float(estimate.empirical_rate),
        Cell::Float(estimate.analytic_rate),
        Cell::Float(estimate.z_score),
    ]);
    Ok(vec![target.write_table(&table, config)?])
}
