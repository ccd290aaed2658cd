//! Run configuration: command-line flags, an optional TOML file with the same
//! key names, and per-experiment defaults, merged in that order of precedence.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::resummation::{schedule_point, EulerLimitConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Euler sum of the alternating zeta series at `--s`.
    Zeta,
    /// Euler sum of a named textbook series (`--series`).
    EulerSum,
    /// Identity action of the square-well kernel on y(pi - y).
    WellDelta,
    /// Hamiltonian action of the square-well kernel on y(pi - y).
    WellHamiltonian,
    /// Exact interval integral of the square-well kernel over [a, b].
    WellIntegral,
    /// Identity action of the Mehler kernel on exp(-y^2).
    OscDelta,
    /// Hamiltonian action of the Mehler kernel on exp(-y^2).
    OscHamiltonian,
    /// Mehler closed form against its truncated series.
    MehlerCheck,
    /// Kernel values on a grid of points.
    Sweep,
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Zeta => "zeta",
            Experiment::EulerSum => "euler-sum",
            Experiment::WellDelta => "well-delta",
            Experiment::WellHamiltonian => "well-hamiltonian",
            Experiment::WellIntegral => "well-integral",
            Experiment::OscDelta => "osc-delta",
            Experiment::OscHamiltonian => "osc-hamiltonian",
            Experiment::MehlerCheck => "mehler-check",
            Experiment::Sweep => "sweep",
        }
    }

    fn default_k_max(&self) -> u32 {
        match self {
            Experiment::Zeta | Experiment::EulerSum => 40,
            Experiment::WellIntegral => 20,
            Experiment::MehlerCheck => 6,
            _ => 10,
        }
    }

    fn default_point(&self) -> (f64, f64) {
        match self {
            Experiment::OscDelta | Experiment::OscHamiltonian => (0.5, 0.0),
            Experiment::MehlerCheck => (0.3, 0.4),
            _ => (1.0, 2.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// 1 + 1 + 1 + ...
    #[default]
    Ones,
    /// -1 + 1 - 1 + ...
    Alternating,
    /// 1 + 2 + 3 + ...
    Naturals,
    /// -1/3 + 2/3 - 3/3 + ...
    AlternatingNaturals,
    /// 1 + 1/2 + 1/4 + ...
    GeometricHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKernel {
    #[default]
    Well,
    Oscillator,
}

/// Every tunable, as given on the command line or in a config file.
/// `None` means "not given here".
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, clap::Args)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// Zeta argument.
    #[arg(long)]
    pub s: Option<f64>,
    /// Evaluation point.
    #[arg(long)]
    pub x: Option<f64>,
    /// Second coordinate (mehler-check).
    #[arg(long)]
    pub y: Option<f64>,
    /// Lower interval end (well-integral).
    #[arg(long)]
    pub a: Option<f64>,
    /// Upper interval end (well-integral).
    #[arg(long)]
    pub b: Option<f64>,
    /// Schedule ratio r in t_k = 1 - r^k.
    #[arg(long = "t-ratio")]
    pub t_ratio: Option<f64>,
    /// First schedule index.
    #[arg(long = "k-min")]
    pub k_min: Option<u32>,
    /// Last schedule index.
    #[arg(long = "k-max")]
    pub k_max: Option<u32>,
    /// Euler-limit tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Points in the trailing extrapolation window.
    #[arg(long = "extrapolation-order")]
    pub extrapolation_order: Option<usize>,
    /// Gauss-Legendre nodes per panel.
    #[arg(long = "quad-nodes")]
    pub quad_nodes: Option<usize>,
    /// Quadrature agreement tolerance.
    #[arg(long = "quad-tol")]
    pub quad_tol: Option<f64>,
    /// Maximum panel bisections.
    #[arg(long = "quad-refinements")]
    pub quad_refinements: Option<usize>,
    /// Result file path.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Treat an unconverged Euler limit as NoEulerSum.
    #[arg(long, num_args = 0, default_missing_value = "true")]
    pub strict: Option<bool>,
    /// Record per-row wall time (rows are otherwise byte-reproducible).
    #[arg(long = "record-timing", num_args = 0, default_missing_value = "true")]
    pub record_timing: Option<bool>,
    /// Series for euler-sum.
    #[arg(long, value_enum)]
    pub series: Option<SeriesKind>,
    /// Kernel for sweep.
    #[arg(long, value_enum)]
    pub kernel: Option<SweepKernel>,
    /// Grid points per axis for sweep.
    #[arg(long = "grid-n")]
    pub grid_n: Option<usize>,
    /// Single regulator value for sweep instead of the schedule.
    #[arg(long)]
    pub t: Option<f64>,
}

impl Settings {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidConfig(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidConfig(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }

    /// Fills every unset field from `fallback`.
    pub fn or(self, fallback: Settings) -> Settings {
        Settings {
            s: self.s.or(fallback.s),
            x: self.x.or(fallback.x),
            y: self.y.or(fallback.y),
            a: self.a.or(fallback.a),
            b: self.b.or(fallback.b),
            t_ratio: self.t_ratio.or(fallback.t_ratio),
            k_min: self.k_min.or(fallback.k_min),
            k_max: self.k_max.or(fallback.k_max),
            tol: self.tol.or(fallback.tol),
            extrapolation_order: self.extrapolation_order.or(fallback.extrapolation_order),
            quad_nodes: self.quad_nodes.or(fallback.quad_nodes),
            quad_tol: self.quad_tol.or(fallback.quad_tol),
            quad_refinements: self.quad_refinements.or(fallback.quad_refinements),
            output: self.output.or(fallback.output),
            format: self.format.or(fallback.format),
            strict: self.strict.or(fallback.strict),
            record_timing: self.record_timing.or(fallback.record_timing),
            series: self.series.or(fallback.series),
            kernel: self.kernel.or(fallback.kernel),
            grid_n: self.grid_n.or(fallback.grid_n),
            t: self.t.or(fallback.t),
        }
    }
}

/// Fully resolved configuration of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub s: Option<f64>,
    pub x: f64,
    pub y: f64,
    pub a: f64,
    pub b: f64,
    pub ratio: f64,
    pub k_min: u32,
    pub k_max: u32,
    pub tolerance: f64,
    pub extrapolation_order: usize,
    pub quadrature: QuadratureSpec,
    pub output_path: PathBuf,
    pub output_format: OutputFormat,
    pub strict: bool,
    pub record_timing: bool,
    pub series: SeriesKind,
    pub kernel: SweepKernel,
    pub grid_n: usize,
    pub fixed_t: Option<f64>,
    /// Sweep evaluates only `(x, y)` when either coordinate was given.
    pub single_point: bool,
}

pub const MAX_K: u32 = 60;

impl RunConfig {
    /// Applies experiment defaults under `settings` and validates the result.
    pub fn resolve(experiment: Experiment, settings: Settings) -> Result<Self> {
        let euler = EulerLimitConfig::default();
        let quad = QuadratureSpec::default();
        let (x, y) = experiment.default_point();
        let single_point = settings.x.is_some() || settings.y.is_some();
        let output_format = settings.format.unwrap_or_default();
        let output_path = settings.output.unwrap_or_else(|| {
            PathBuf::from(format!(
                "{}.{}",
                experiment.name(),
                output_format.extension()
            ))
        });
        let cfg = RunConfig {
            experiment,
            s: settings.s,
            x: settings.x.unwrap_or(x),
            y: settings.y.unwrap_or(y),
            a: settings.a.unwrap_or(0.5),
            b: settings.b.unwrap_or(1.5),
            ratio: settings.t_ratio.unwrap_or(euler.ratio),
            k_min: settings.k_min.unwrap_or(1),
            k_max: settings.k_max.unwrap_or(experiment.default_k_max()),
            tolerance: settings.tol.unwrap_or(euler.tolerance),
            extrapolation_order: settings
                .extrapolation_order
                .unwrap_or(euler.extrapolation_order),
            quadrature: QuadratureSpec {
                nodes_per_panel: settings.quad_nodes.unwrap_or(quad.nodes_per_panel),
                max_refinements: settings.quad_refinements.unwrap_or(quad.max_refinements),
                tolerance: settings.quad_tol.unwrap_or(quad.tolerance),
            },
            output_path,
            output_format,
            strict: settings.strict.unwrap_or(false),
            record_timing: settings.record_timing.unwrap_or(false),
            series: settings.series.unwrap_or_default(),
            kernel: settings.kernel.unwrap_or_default(),
            grid_n: settings.grid_n.unwrap_or(50),
            fixed_t: settings.t,
            single_point,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.tolerance > 0.0) {
            return bad(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            ));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return bad(format!("t-ratio must lie in (0, 1), got {}", self.ratio));
        }
        if self.k_max == 0 || self.k_max > MAX_K {
            return bad(format!("k-max must lie in 1..={MAX_K}, got {}", self.k_max));
        }
        if self.k_min == 0 || self.k_min > self.k_max {
            return bad(format!("k-min must lie in 1..=k-max, got {}", self.k_min));
        }
        if schedule_point(self.ratio, self.k_max) >= 1.0 {
            return bad(format!(
                "t_k = 1 - {}^{} rounds to 1; lower k-max",
                self.ratio, self.k_max
            ));
        }
        self.quadrature.validate()?;
        if self.extrapolation_order == 0 {
            return bad("extrapolation-order must be at least 1".into());
        }
        for (name, v) in [("x", self.x), ("y", self.y), ("a", self.a), ("b", self.b)] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        match self.experiment {
            Experiment::Zeta => match self.s {
                None => return bad("zeta needs --s".into()),
                Some(s) if !s.is_finite() => return bad("s must be finite".into()),
                _ => {}
            },
            Experiment::Sweep => {
                if self.grid_n == 0 {
                    return bad("grid-n must be positive".into());
                }
                if let Some(t) = self.fixed_t {
                    if !(0.0..1.0).contains(&t) {
                        return bad(format!("t must lie in [0, 1), got {t}"));
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn euler_config(&self) -> EulerLimitConfig {
        EulerLimitConfig {
            ratio: self.ratio,
            k_max: self.k_max,
            extrapolation_order: self.extrapolation_order,
            tolerance: self.tolerance,
        }
    }

    /// `(k, t_k)` for `k = k_min..=k_max`.
    pub fn schedule(&self) -> Vec<(u32, f64)> {
        (self.k_min..=self.k_max)
            .map(|k| (k, schedule_point(self.ratio, k)))
            .collect()
    }
}
