//! Run configuration: a strict TOML schema (unknown keys are rejected),
//! shipped presets, and command-line overrides.

use anyhow::{anyhow, bail, Result};
use fqergo::feedback::{
    BetaSchedule, ConvergenceRule, DriveApplication, ErrorModel, FqergoConfig, MeasurementMode,
};
use fqergo::hamiltonians::{model_by_name_with, Hamiltonian, LocalChannels, PhaseTag};
use fqergo::states::DensityMatrix;
use serde::Deserialize;

/// Presets shipped with the binary; `--preset <name>` loads one of these.
pub const PRESETS: &[(&str, &str)] = &[
    ("1q-fig2", include_str!("../presets/1q-fig2.toml")),
    ("2q-fig3", include_str!("../presets/2q-fig3.toml")),
    ("nmr-preset", include_str!("../presets/nmr-preset.toml")),
    ("bell", include_str!("../presets/bell.toml")),
];

pub fn preset_by_name(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| {
            let known: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            anyhow!("unknown preset `{name}` (known: {})", known.join(", "))
        })
}

/// Top-level run schema. Every field has a default so presets only state
/// what they change; unknown keys fail parsing.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// "single-qubit" | "two-qubit" | "single"
    #[serde(default = "default_suite")]
    pub suite: String,
    /// "1q-default" | "2q-default" | "2q-global"
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default = "default_n_states")]
    pub n_states: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_w")]
    pub w: f64,
    #[serde(default = "default_tau")]
    pub tau: f64,
    #[serde(default = "default_iterations")]
    pub iterations_local: usize,
    #[serde(default = "default_iterations")]
    pub iterations_global: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// "exact" | "probe" | "probe-shots"
    #[serde(default = "default_measurement")]
    pub measurement: String,
    #[serde(default = "default_shots")]
    pub shots: u64,
    /// "none" | "random-rotation:<deg>" | "random-hamiltonian:<deg>"
    #[serde(default = "default_error")]
    pub error: String,
    /// "per-qubit" | "collective"
    #[serde(default = "default_channels")]
    pub local_channels: String,
    /// "sequential" | "upfront"
    #[serde(default = "default_sequential")]
    pub beta_schedule: String,
    /// "sequential" | "combined"
    #[serde(default = "default_sequential")]
    pub drive_application: String,
    #[serde(default)]
    pub convergence: ConvergenceSection,
    #[serde(default)]
    pub initial: Option<InitialSection>,
    #[serde(default)]
    pub output: OutputSection,
}

fn default_suite() -> String {
    "single".into()
}
fn default_model() -> String {
    "1q-default".into()
}
fn default_n_states() -> usize {
    20
}
fn default_seed() -> u64 {
    7
}
fn default_w() -> f64 {
    1.0
}
fn default_tau() -> f64 {
    0.8
}
fn default_iterations() -> usize {
    30
}
fn default_delta() -> f64 {
    0.1
}
fn default_alpha() -> f64 {
    0.01
}
fn default_measurement() -> String {
    "exact".into()
}
fn default_shots() -> u64 {
    4096
}
fn default_error() -> String {
    "none".into()
}
fn default_channels() -> String {
    "per-qubit".into()
}
fn default_sequential() -> String {
    "sequential".into()
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceSection {
    pub tol: f64,
    pub window: usize,
}

impl Default for ConvergenceSection {
    fn default() -> Self {
        let rule = ConvergenceRule::default();
        ConvergenceSection {
            tol: rule.tol,
            window: rule.window,
        }
    }
}

/// Initial state for `suite = "single"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    /// "bloch" | "file" | "bell" | "random" | "entangled"
    pub kind: String,
    #[serde(default)]
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(default = "one")]
    pub epsilon: f64,
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub nu: f64,
    #[serde(default)]
    pub state_seed: u64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub dir: Option<String>,
    #[serde(default = "default_formats")]
    pub formats: Vec<String>,
}

fn default_formats() -> Vec<String> {
    vec!["csv".into(), "json".into(), "svg".into()]
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: None,
            formats: default_formats(),
        }
    }
}

pub fn parse_run_config(text: &str) -> Result<RunConfig> {
    let config: RunConfig = toml::from_str(text).map_err(|e| anyhow!("config error: {e}"))?;
    validate(&config)?;
    Ok(config)
}

fn validate(config: &RunConfig) -> Result<()> {
    match config.suite.as_str() {
        "single-qubit" | "two-qubit" | "single" => {}
        other => bail!("config error: unknown suite `{other}` (single-qubit, two-qubit, single)"),
    }
    match config.measurement.as_str() {
        "exact" | "probe" | "probe-shots" => {}
        other => bail!("config error: unknown measurement `{other}` (exact, probe, probe-shots)"),
    }
    match config.local_channels.as_str() {
        "per-qubit" | "collective" => {}
        other => bail!("config error: unknown local_channels `{other}` (per-qubit, collective)"),
    }
    match config.beta_schedule.as_str() {
        "sequential" | "upfront" => {}
        other => bail!("config error: unknown beta_schedule `{other}` (sequential, upfront)"),
    }
    match config.drive_application.as_str() {
        "sequential" | "combined" => {}
        other => bail!("config error: unknown drive_application `{other}` (sequential, combined)"),
    }
    for format in &config.output.formats {
        match format.as_str() {
            "csv" | "json" | "svg" => {}
            other => bail!("config error: unknown output format `{other}` (csv, json, svg)"),
        }
    }
    parse_error_model(&config.error)?;
    if config.suite == "single" && config.initial.is_none() {
        bail!("config error: suite = \"single\" needs an [initial] section");
    }
    Ok(())
}

/// Parse "none", "random-rotation:<deg>[deg]", "random-hamiltonian:<deg>[deg]"
/// (underscores accepted in place of dashes).
pub fn parse_error_model(text: &str) -> Result<ErrorModel> {
    let norm = text.trim().replace('_', "-");
    if norm == "none" {
        return Ok(ErrorModel::None);
    }
    let (kind, value) = norm
        .split_once(':')
        .ok_or_else(|| anyhow!("config error: error model `{text}` is not `kind:angle`"))?;
    let degrees: f64 = value
        .trim()
        .trim_end_matches("deg")
        .parse()
        .map_err(|_| anyhow!("config error: bad error angle in `{text}`"))?;
    if degrees < 0.0 {
        bail!("config error: error angle must be ≥ 0 in `{text}`");
    }
    match kind {
        "random-rotation" => Ok(ErrorModel::RandomRotation { angle_deg: degrees }),
        "random-hamiltonian" => Ok(ErrorModel::RandomHamiltonian { eta_deg: degrees }),
        other => bail!("config error: unknown error model `{other}`"),
    }
}

pub fn parse_measurement(config: &RunConfig) -> Result<MeasurementMode> {
    Ok(match config.measurement.as_str() {
        "exact" => MeasurementMode::Exact,
        "probe" => MeasurementMode::Probe,
        "probe-shots" => MeasurementMode::ProbeShots { shots: config.shots },
        _ => unreachable!("validated"),
    })
}

pub fn parse_channels(config: &RunConfig) -> LocalChannels {
    match config.local_channels.as_str() {
        "collective" => LocalChannels::Collective,
        _ => LocalChannels::PerQubit,
    }
}

/// Resolve the model name and the full engine config.
pub fn build_engine_config(config: &RunConfig) -> Result<(Hamiltonian, FqergoConfig)> {
    let channels = parse_channels(config);
    let (h0, drive_set) = model_by_name_with(&config.model, channels)
        .map_err(|e| anyhow!("config error: {e}"))?;
    let phases = if config.model == "2q-global" {
        vec![
            (PhaseTag::Local, config.iterations_local),
            (PhaseTag::Global, config.iterations_global),
        ]
    } else {
        vec![(PhaseTag::Local, config.iterations_local)]
    };
    let mut engine = FqergoConfig::new(drive_set, phases, config.seed);
    engine.w = config.w;
    engine.tau = config.tau;
    engine.delta = config.delta;
    engine.alpha = config.alpha;
    engine.measurement_mode = parse_measurement(config)?;
    engine.error_model = parse_error_model(&config.error)?;
    engine.convergence = ConvergenceRule {
        tol: config.convergence.tol,
        window: config.convergence.window,
    };
    engine.beta_schedule = match config.beta_schedule.as_str() {
        "upfront" => BetaSchedule::Upfront,
        _ => BetaSchedule::Sequential,
    };
    engine.drive_application = match config.drive_application.as_str() {
        "combined" => DriveApplication::Combined,
        _ => DriveApplication::Sequential,
    };
    engine.validate().map_err(|e| anyhow!("config error: {e}"))?;
    Ok((h0, engine))
}

/// Build the initial state for a single run.
pub fn build_initial_state(initial: &InitialSection, n_qubits: usize) -> Result<DensityMatrix> {
    let rho = match initial.kind.as_str() {
        "bloch" => fqergo::states::density_from_bloch(initial.theta, initial.phi, initial.epsilon)
            .map_err(|e| anyhow!("config error: {e}"))?,
        "bell" => DensityMatrix::bell_phi_plus(),
        "random" => fqergo::states::random_pure(n_qubits, initial.state_seed)
            .map_err(|e| anyhow!("config error: {e}"))?,
        "entangled" => fqergo::experiments::entangled_initial_state(initial.nu),
        "file" => {
            let path = initial
                .path
                .as_ref()
                .ok_or_else(|| anyhow!("config error: initial kind `file` needs `path`"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow!("cannot read state file `{path}`: {e}"))?;
            fqergo::states::from_text(&text).map_err(|e| anyhow!("config error: {e}"))?
        }
        other => bail!("config error: unknown initial kind `{other}`"),
    };
    if rho.n_qubits() != n_qubits {
        bail!(
            "config error: initial state has {} qubits but model `{}-qubit system` expects {n_qubits}",
            rho.n_qubits(),
            n_qubits,
        );
    }
    Ok(rho)
}
