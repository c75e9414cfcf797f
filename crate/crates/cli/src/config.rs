//! Experiment configuration: a strict JSON document with named sections.
//! Unknown keys are rejected so typos in physics parameters fail loudly.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use zeno_distill::hilbert::StateVector;
use zeno_distill::models::{
    build_chain, build_trapped_ion, ChainParams, HamiltonianModel, TrappedIonParams,
};
use zeno_distill::StateVector64;

use crate::CliError;

/// Real number or `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Pair([f64; 2]),
}

impl Amplitude {
    pub fn to_complex(self) -> C64 {
        match self {
            Amplitude::Real(x) => C64::new(x, 0.0),
            Amplitude::Pair([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSection {
    Chain {
        couplings: Vec<Amplitude>,
    },
    TrappedIon {
        omega: f64,
        kappa: f64,
        p: i32,
        q: i32,
        eta1: f64,
        eta2: f64,
        n_max: usize,
    },
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Psi0Spec {
    /// `"fock:n"` or `"uniform:a..b"` (inclusive).
    Named(String),
    /// Explicit amplitudes, auto-normalized with a warning when the norm
    /// deviates from 1.
    Amplitudes(Vec<Amplitude>),
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolSection {
    #[serde(default)]
    pub master_index: usize,
    pub tau: f64,
    pub steps: usize,
    pub psi0: Psi0Spec,
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    #[serde(default = "default_tol_closed")]
    pub tol_closed: f64,
    #[serde(default = "default_degeneracy_tol")]
    pub degeneracy_tol: f64,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
}

fn default_tol_closed() -> f64 {
    1e-3
}
fn default_degeneracy_tol() -> f64 {
    1e-9
}
fn default_rel_tol() -> f64 {
    1e-2
}

impl Default for AnalysisSection {
    fn default() -> Self {
        Self {
            tol_closed: default_tol_closed(),
            degeneracy_tol: default_degeneracy_tol(),
            rel_tol: default_rel_tol(),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SweepSection {
    Zeno {
        kappa_grid: Vec<f64>,
        tau: f64,
    },
    Hierarchy {
        kappa_grid: Vec<f64>,
        lambda_grid: Vec<f64>,
        tau: f64,
    },
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoriesSection {
    pub num_trajectories: usize,
    pub base_seed: u64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetSection {
    /// Preserve the single number state `n_bar` (bare conditioning plan).
    Single { n_bar: usize },
    /// Eliminate every number state below `q` (freezing plan).
    ComplementRange { q: usize },
    /// Eliminate the single number state `n_bar` (vibronic-zero plan).
    ComplementSingle { n_bar: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_format")]
    pub format: OutputFormat,
    #[serde(default)]
    pub path: Option<String>,
}

fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { format: default_format(), path: None }
    }
}

/// The full experiment document. Resolved copies of this struct (after flag
/// overrides) are embedded verbatim in every output file.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSection,
    pub protocol: ProtocolSection,
    #[serde(default)]
    pub analysis: AnalysisSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectories: Option<TrajectoriesSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetSection>,
    #[serde(default)]
    pub output: OutputSection,
}

impl ExperimentConfig {
    pub fn from_file(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        match &self.model {
            ModelSection::Chain { couplings } => {
                if couplings.is_empty() {
                    return Err(CliError::Config("model.couplings must not be empty".into()));
                }
                for (i, a) in couplings.iter().enumerate() {
                    let z = a.to_complex();
                    if !z.re.is_finite() || !z.im.is_finite() {
                        return Err(CliError::Config(format!(
                            "model.couplings[{i}] must be finite"
                        )));
                    }
                }
            }
            ModelSection::TrappedIon { omega, kappa, eta1, eta2, .. } => {
                for (name, v) in
                    [("omega", omega), ("kappa", kappa), ("eta1", eta1), ("eta2", eta2)]
                {
                    if !v.is_finite() {
                        return Err(CliError::Config(format!("model.{name} must be finite")));
                    }
                }
            }
        }
        if self.protocol.steps == 0 {
            return Err(CliError::Config("protocol.steps must be at least 1".into()));
        }
        if !self.protocol.tau.is_finite() || self.protocol.tau < 0.0 {
            return Err(CliError::Config("protocol.tau must be finite and nonnegative".into()));
        }
        for (name, v) in [
            ("tol_closed", self.analysis.tol_closed),
            ("degeneracy_tol", self.analysis.degeneracy_tol),
            ("rel_tol", self.analysis.rel_tol),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(CliError::Config(format!(
                    "analysis.{name} must be finite and nonnegative"
                )));
            }
        }
        Ok(())
    }

    /// Build the model described by the `model` section.
    pub fn build_model(&self) -> Result<HamiltonianModel<f64>, CliError> {
        match &self.model {
            ModelSection::Chain { couplings } => {
                let params =
                    ChainParams::new(couplings.iter().map(|a| a.to_complex()).collect())?;
                Ok(build_chain(&params)?)
            }
            ModelSection::TrappedIon { .. } => {
                let params = self.trapped_ion_params()?;
                Ok(build_trapped_ion(&params)?)
            }
        }
    }

    /// The ion parameters, if the model section describes the ion model.
    pub fn trapped_ion_params(&self) -> Result<TrappedIonParams<f64>, CliError> {
        match &self.model {
            ModelSection::TrappedIon { omega, kappa, p, q, eta1, eta2, n_max } => {
                let params = TrappedIonParams {
                    omega: *omega,
                    kappa: *kappa,
                    p: *p,
                    q: *q,
                    eta1: *eta1,
                    eta2: *eta2,
                    n_max: *n_max,
                };
                params.validate()?;
                Ok(params)
            }
            ModelSection::Chain { .. } => {
                Err(CliError::Config("this command requires a trapped_ion model".into()))
            }
        }
    }

    /// Resolve the initial Slave state against the model dimension.
    /// Explicit amplitude lists are normalized, warning on stderr when the
    /// norm deviates from 1.
    pub fn resolve_psi0(&self, slave_dim: usize) -> Result<StateVector64, CliError> {
        match &self.protocol.psi0 {
            Psi0Spec::Named(spec) => parse_named_psi0(spec, slave_dim),
            Psi0Spec::Amplitudes(list) => {
                if list.len() != slave_dim {
                    return Err(CliError::Config(format!(
                        "psi0 has {} amplitudes but the Slave space has dimension {slave_dim}",
                        list.len()
                    )));
                }
                let raw: Vec<C64> = list.iter().map(|a| a.to_complex()).collect();
                let state = StateVector::new(raw)?;
                let norm = state.norm();
                if norm <= 0.0 || !norm.is_finite() {
                    return Err(CliError::Config("psi0 must not be the zero vector".into()));
                }
                if (norm - 1.0).abs() > 1e-12 {
                    eprintln!("warning: psi0 norm is {norm:.6}; renormalizing to 1");
                }
                Ok(state.normalized().expect("norm checked above"))
            }
        }
    }
}

fn parse_named_psi0(spec: &str, slave_dim: usize) -> Result<StateVector64, CliError> {
    if let Some(rest) = spec.strip_prefix("fock:") {
        let n: usize = rest
            .parse()
            .map_err(|_| CliError::Config(format!("bad psi0 spec '{spec}'")))?;
        return Ok(StateVector::basis_state(slave_dim, n)?);
    }
    if let Some(rest) = spec.strip_prefix("uniform:") {
        let (lo, hi) = rest
            .split_once("..")
            .ok_or_else(|| CliError::Config(format!("bad psi0 spec '{spec}'")))?;
        let lo: usize =
            lo.parse().map_err(|_| CliError::Config(format!("bad psi0 spec '{spec}'")))?;
        let hi: usize =
            hi.parse().map_err(|_| CliError::Config(format!("bad psi0 spec '{spec}'")))?;
        return Ok(StateVector::uniform(slave_dim, lo, hi)?);
    }
    Err(CliError::Config(format!(
        "bad psi0 spec '{spec}': expected 'fock:n', 'uniform:a..b' or an amplitude list"
    )))
}
