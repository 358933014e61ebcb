//! TOML experiment configuration.
//!
//! Every table rejects unknown keys. Only `[params]` is required; the
//! section for the selected experiment falls back to its defaults.

use std::fmt;
use std::str::FromStr;

use boussinesq_core::nonlinear::Formulation;
use boussinesq_core::{AnalyticProfile, PhysParams};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    LinearDecay,
    NonlinearRun,
    LemmaChecks,
    PropagatorVerify,
}

impl ExperimentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::LinearDecay => "linear-decay",
            ExperimentKind::NonlinearRun => "nonlinear-run",
            ExperimentKind::LemmaChecks => "lemma-checks",
            ExperimentKind::PropagatorVerify => "propagator-verify",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    /// Malformed TOML, a wrong type, an unknown or a missing key.
    #[error("{}: {message}", location(*line, *column))]
    Parse {
        line: Option<usize>,
        column: Option<usize>,
        message: String,
    },
    #[error("`{key}` out of range: {reason}")]
    OutOfRange { key: String, reason: String },
    #[error("config is for `{found}` but the command is `{expected}`")]
    KindMismatch {
        expected: ExperimentKind,
        found: ExperimentKind,
    },
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!("line {l}, column {c}"),
        (Some(l), None) => format!("line {l}"),
        _ => "config".to_string(),
    }
}

impl ConfigError {
    fn range(key: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError::OutOfRange {
            key: key.into(),
            reason: reason.into(),
        }
    }

    /// Dotted key an out-of-range error refers to.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::OutOfRange { key, .. } => Some(key),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub alpha: f64,
    pub brunt_n: f64,
}

/// Geometric sample times, `per_decade` points per factor of ten.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleConfig {
    pub t_min: f64,
    pub t_max: f64,
    #[serde(default = "default_per_decade")]
    pub per_decade: usize,
}

fn default_per_decade() -> usize {
    16
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig {
            t_min: 1e2,
            t_max: 1e4,
            per_decade: 16,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileConfig {
    Gaussian { amplitude: f64, width: f64 },
    RingGaussian { amplitude: f64, width: f64, radius: f64 },
    PolyGaussian { amplitude: f64, width: f64, power: f64 },
    Algebraic { amplitude: f64, power: f64 },
    Zero,
}

impl ProfileConfig {
    pub fn to_profile(self) -> AnalyticProfile {
        match self {
            ProfileConfig::Gaussian { amplitude, width } => AnalyticProfile::Gaussian { amplitude, width },
            ProfileConfig::RingGaussian { amplitude, width, radius } => AnalyticProfile::RingGaussian {
                amplitude,
                width,
                radius,
            },
            ProfileConfig::PolyGaussian { amplitude, width, power } => AnalyticProfile::PolyGaussian {
                amplitude,
                width,
                power,
            },
            ProfileConfig::Algebraic { amplitude, power } => AnalyticProfile::Algebraic { amplitude, power },
            ProfileConfig::Zero => AnalyticProfile::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinearConfig {
    pub b0: ProfileConfig,
    pub omega0: ProfileConfig,
    /// Allowed distance between fitted and predicted exponents.
    pub tolerance: f64,
}

impl Default for LinearConfig {
    fn default() -> Self {
        let g = ProfileConfig::Gaussian {
            amplitude: 1.0,
            width: 1.0,
        };
        LinearConfig {
            b0: g,
            omega0: g,
            tolerance: 0.03,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulationConfig {
    Vorticity,
    Diagonalized,
}

impl From<FormulationConfig> for Formulation {
    fn from(f: FormulationConfig) -> Self {
        match f {
            FormulationConfig::Vorticity => Formulation::Vorticity,
            FormulationConfig::Diagonalized => Formulation::Diagonalized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NonlinearConfig {
    /// Points per direction of the square lattice.
    pub grid: usize,
    /// Side of the periodic box.
    pub length: f64,
    pub dt: f64,
    pub t_end: f64,
    pub output_every: usize,
    pub formulation: FormulationConfig,
    pub dealias: bool,
    pub sigma: f64,
    /// RMS of each random initial field; ignored when `zero` is set.
    pub amplitude: f64,
    pub k0: f64,
    pub vanish_on_vertical_line: bool,
    pub zero: bool,
    /// Time window of the decay fits.
    pub fit_window: [f64; 2],
    /// Bound on `|energy defect| / E(0)`.
    pub energy_tolerance: f64,
}

impl Default for NonlinearConfig {
    fn default() -> Self {
        NonlinearConfig {
            grid: 64,
            length: 2.0 * std::f64::consts::PI,
            dt: 5e-3,
            t_end: 50.0,
            output_every: 50,
            formulation: FormulationConfig::Vorticity,
            dealias: true,
            sigma: 1.0,
            amplitude: 1e-2,
            k0: 6.0,
            vanish_on_vertical_line: true,
            zero: false,
            fit_window: [5.0, 50.0],
            energy_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LemmaConfig {
    /// Powers `k` of the angular integral.
    pub ks: Vec<u32>,
    pub angular_tolerance: f64,
    /// `(γ, κ)` pairs of the convolution integral.
    pub bhn_pairs: Vec<[f64; 2]>,
    pub bhn_tolerance: f64,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        let grid: [f64; 3] = [0.25, 0.5, 0.75];
        let bhn_pairs = grid
            .iter()
            .flat_map(|&g| grid.iter().map(move |&k| [g, k]))
            .filter(|[g, k]| (g + k - 1.0).abs() > 1e-12)
            .collect();
        LemmaConfig {
            ks: (0..=4).collect(),
            angular_tolerance: 0.02,
            bhn_pairs,
            bhn_tolerance: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PropagatorConfig {
    pub alphas: Vec<f64>,
    pub brunt_ns: Vec<f64>,
    /// Ratios `ξ₁/|ξ|`. The degenerate ratio `α/(2N)` is added for every
    /// pair where it lies in `[0, 1]`.
    pub mus: Vec<f64>,
    pub times: Vec<f64>,
    /// RK4 step of the reference integration (halved once for Richardson).
    pub step: f64,
    pub tolerance: f64,
}

impl Default for PropagatorConfig {
    fn default() -> Self {
        PropagatorConfig {
            alphas: vec![0.5, 1.0, 2.0],
            brunt_ns: vec![0.5, 1.0, 2.0],
            mus: vec![0.0, 0.01, 0.3, 0.9, 1.0],
            times: vec![0.1, 1.0, 10.0, 100.0],
            step: 1e-4,
            tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    experiment: Option<ExperimentKind>,
    seed: Option<u64>,
    params: ParamsConfig,
    schedule: Option<ScheduleConfig>,
    linear: Option<LinearConfig>,
    nonlinear: Option<NonlinearConfig>,
    lemma: Option<LemmaConfig>,
    propagator: Option<PropagatorConfig>,
}

/// A validated experiment description.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    /// `None` when the document leaves the choice to the command line.
    pub experiment: Option<ExperimentKind>,
    pub seed: u64,
    pub params: ParamsConfig,
    pub schedule: ScheduleConfig,
    pub linear: LinearConfig,
    pub nonlinear: NonlinearConfig,
    pub lemma: LemmaConfig,
    pub propagator: PropagatorConfig,
}

impl ExperimentConfig {
    /// Defaults with the given rates.
    pub fn with_params(alpha: f64, brunt_n: f64) -> Self {
        ExperimentConfig {
            experiment: None,
            seed: 0,
            params: ParamsConfig { alpha, brunt_n },
            schedule: ScheduleConfig::default(),
            linear: LinearConfig::default(),
            nonlinear: NonlinearConfig::default(),
            lemma: LemmaConfig::default(),
            propagator: PropagatorConfig::default(),
        }
    }

    pub fn phys_params(&self) -> PhysParams {
        PhysParams::new(self.params.alpha, self.params.brunt_n).expect("validated on parse")
    }

    /// Resolves the experiment against the command that was invoked.
    pub fn resolve(&self, command: ExperimentKind) -> Result<ExperimentKind, ConfigError> {
        match self.experiment {
            Some(found) if found != command => Err(ConfigError::KindMismatch {
                expected: command,
                found,
            }),
            _ => Ok(command),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let p = &self.params;
        positive("params.alpha", p.alpha)?;
        positive("params.brunt_n", p.brunt_n)?;

        let s = &self.schedule;
        positive("schedule.t_min", s.t_min)?;
        if !(s.t_max.is_finite() && s.t_max > s.t_min) {
            return Err(ConfigError::range("schedule.t_max", format!("must exceed t_min, got {}", s.t_max)));
        }
        if s.per_decade == 0 {
            return Err(ConfigError::range("schedule.per_decade", "must be >= 1"));
        }

        let l = &self.linear;
        for (key, prof) in [("linear.b0", l.b0), ("linear.omega0", l.omega0)] {
            prof.to_profile().validate().map_err(|e| ConfigError::range(key, e.to_string()))?;
        }
        positive("linear.tolerance", l.tolerance)?;

        let n = &self.nonlinear;
        if n.grid < 8 || n.grid % 2 != 0 {
            return Err(ConfigError::range("nonlinear.grid", format!("must be even and >= 8, got {}", n.grid)));
        }
        positive("nonlinear.length", n.length)?;
        positive("nonlinear.dt", n.dt)?;
        positive("nonlinear.t_end", n.t_end)?;
        if n.output_every == 0 {
            return Err(ConfigError::range("nonlinear.output_every", "must be >= 1"));
        }
        if !n.sigma.is_finite() {
            return Err(ConfigError::range("nonlinear.sigma", "must be finite"));
        }
        if !(n.amplitude.is_finite() && n.amplitude >= 0.0) {
            return Err(ConfigError::range("nonlinear.amplitude", "must be >= 0"));
        }
        positive("nonlinear.k0", n.k0)?;
        let [w0, w1] = n.fit_window;
        if !(w0 > 0.0 && w1 > w0 && w1.is_finite()) {
            return Err(ConfigError::range("nonlinear.fit_window", "need 0 < start < end"));
        }
        positive("nonlinear.energy_tolerance", n.energy_tolerance)?;

        let m = &self.lemma;
        if m.ks.iter().any(|&k| k > 16) {
            return Err(ConfigError::range("lemma.ks", "powers above 16 are not supported"));
        }
        positive("lemma.angular_tolerance", m.angular_tolerance)?;
        positive("lemma.bhn_tolerance", m.bhn_tolerance)?;
        for [g, k] in &m.bhn_pairs {
            let inside = |v: &f64| (0.0..1.0).contains(v);
            if !(inside(g) && inside(k)) {
                return Err(ConfigError::range("lemma.bhn_pairs", format!("({g}, {k}) outside [0, 1)")));
            }
            if (g + k - 1.0).abs() < 1e-12 {
                return Err(ConfigError::range("lemma.bhn_pairs", "gamma + kappa = 1 has a logarithmic rate"));
            }
        }

        let q = &self.propagator;
        for (key, vals) in [("propagator.alphas", &q.alphas), ("propagator.brunt_ns", &q.brunt_ns)] {
            if vals.is_empty() || vals.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(ConfigError::range(key, "need a non-empty list of positive values"));
            }
        }
        if q.mus.iter().any(|m| !(m.abs() <= 1.0)) {
            return Err(ConfigError::range("propagator.mus", "each |mu| must be <= 1"));
        }
        positive("propagator.step", q.step)?;
        for &t in &q.times {
            if !(t.is_finite() && t >= 0.0) {
                return Err(ConfigError::range("propagator.times", format!("{t} is not a time")));
            }
            let steps = t / (0.5 * q.step);
            if (steps - steps.round()).abs() > 1e-6 * steps.max(1.0) {
                return Err(ConfigError::range(
                    "propagator.times",
                    format!("{t} is not a multiple of step/2"),
                ));
            }
        }
        positive("propagator.tolerance", q.tolerance)?;
        Ok(())
    }
}

fn positive(key: &str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::range(key, format!("must be > 0, got {v}")))
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, col)
}

/// Parses and validates a TOML document.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let doc: Document = toml::from_str(text).map_err(|e| {
        let (line, column) = match e.span() {
            Some(span) => {
                let (l, c) = line_col(text, span.start);
                (Some(l), Some(c))
            }
            None => (None, None),
        };
        ConfigError::Parse {
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })?;
    let config = ExperimentConfig {
        experiment: doc.experiment,
        seed: doc.seed.unwrap_or(0),
        params: doc.params,
        schedule: doc.schedule.unwrap_or_default(),
        linear: doc.linear.unwrap_or_default(),
        nonlinear: doc.nonlinear.unwrap_or_default(),
        lemma: doc.lemma.unwrap_or_default(),
        propagator: doc.propagator.unwrap_or_default(),
    };
    config.validate()?;
    Ok(config)
}

impl FromStr for ExperimentConfig {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_config(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
experiment = "linear-decay"

[params]
alpha = 1.0
brunt_n = 1.0

[linear]
b0 = { family = "gaussian", amplitude = 1.0, width = 1.0 }
omega0 = { family = "gaussian", amplitude = 1.0, width = 1.0 }
"#;

    #[test]
    fn minimal_linear_config() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.experiment, Some(ExperimentKind::LinearDecay));
        assert_eq!(c.linear.b0.to_profile(), AnalyticProfile::gaussian(1.0, 1.0));
        assert_eq!(c.schedule.per_decade, 16);
        assert_eq!(c.resolve(ExperimentKind::LinearDecay), Ok(ExperimentKind::LinearDecay));
        assert!(c.resolve(ExperimentKind::LemmaChecks).is_err());
    }

    #[test]
    fn negative_alpha_names_the_key() {
        let text = MINIMAL.replace("alpha = 1.0", "alpha = -1.0");
        let err = parse_config(&text).unwrap_err();
        assert_eq!(err.key(), Some("params.alpha"));
        assert!(err.to_string().contains("params.alpha"));
    }

    #[test]
    fn misspelled_key_is_rejected_with_its_line() {
        let text = MINIMAL.replace("alpha = 1.0", "alpah = 1.0");
        match parse_config(&text).unwrap_err() {
            ConfigError::Parse { line, message, .. } => {
                assert!(message.contains("unknown field `alpah`"), "{message}");
                assert_eq!(line, Some(5));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_params_table() {
        let err = parse_config("seed = 3\n").unwrap_err();
        assert!(err.to_string().contains("params"), "{err}");
    }

    #[test]
    fn unknown_profile_field() {
        let text = MINIMAL.replace("width = 1.0 }\nomega0", "width = 1.0, radius = 2.0 }\nomega0");
        assert!(matches!(parse_config(&text), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn nested_ranges() {
        let text = format!("{MINIMAL}\n[nonlinear]\ngrid = 30\n");
        assert_eq!(parse_config(&text).unwrap().nonlinear.grid, 30);
        let text = format!("{MINIMAL}\n[nonlinear]\ngrid = 31\n");
        assert_eq!(parse_config(&text).unwrap_err().key(), Some("nonlinear.grid"));
        let text = format!("{MINIMAL}\n[propagator]\ntimes = [0.123456]\n");
        assert_eq!(parse_config(&text).unwrap_err().key(), Some("propagator.times"));
    }
}
