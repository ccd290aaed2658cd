use std::f64::consts::PI;
use std::time::Instant;

use rayon::prelude::*;

use super::config::{Experiment, RunConfig, SeriesKind, SweepKernel};
use super::output::{write_results, write_sweep, ResultRow, SweepRow};
use crate::error::{Error, Result};
use crate::oscillator::{
    mehler_kernel, mehler_series, mehler_series_tail_bound, osc_action, MehlerPoint, MAX_OSC_LEVEL,
};
use crate::resummation::{euler_limit_observed, CoefficientSequence};
use crate::square_well::{
    k_interval_integral, k_kernel, well_action, IntervalIntegralQuery, WellKernelPoint,
};
use crate::zeta::{eta_sequence, zeta_at_nonpositive_integer, zeta_direct};
use crate::Operator;

/// Final error a kernel-limit run must reach.
pub const LIMIT_TOLERANCE: f64 = 1e-2;
/// Final error an interval-integral run must reach.
pub const INTERVAL_TOLERANCE: f64 = 1e-3;
/// Trailing rows that must show a strictly decreasing error.
pub const MONOTONE_WINDOW: usize = 8;
/// Allowed closed-form vs series disagreement in mehler-check.
pub const MEHLER_AGREEMENT: f64 = 1e-8;
const MEHLER_SERIES_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Converged,
    NotConverged,
    Completed,
    Failed(Error),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Converged => "converged",
            Verdict::NotConverged => "not-converged",
            Verdict::Completed => "completed",
            Verdict::Failed(e) => e.name(),
        }
    }

    pub fn status(&self) -> i32 {
        match self {
            Verdict::Converged | Verdict::Completed => 0,
            Verdict::Failed(Error::InvalidConfig(_)) => 1,
            Verdict::NotConverged | Verdict::Failed(_) => 2,
        }
    }
}

/// What `run` did: exit status, the summary line, and the verdict behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub status: i32,
    pub verdict: Verdict,
    pub value: Option<f64>,
    pub error_estimate: Option<f64>,
    pub rows: usize,
    pub summary: String,
}

struct Outcome {
    rows: Vec<ResultRow>,
    value: Option<f64>,
    error_estimate: Option<f64>,
    verdict: Verdict,
}

/// Runs the configured experiment, writes its result file and reports.
pub fn run(cfg: &RunConfig) -> RunReport {
    if let Err(e) = cfg.validate() {
        return report(cfg, None, None, 0, Verdict::Failed(e));
    }
    if cfg.experiment == Experiment::Sweep {
        let rows = match sweep(cfg, &sweep_grid(cfg)) {
            Ok(rows) => rows,
            Err(e) => return report(cfg, None, None, 0, Verdict::Failed(e)),
        };
        let n = rows.len();
        let peak = rows.iter().map(|r| r.value.abs()).fold(0.0, f64::max);
        let verdict = match write_sweep(&cfg.output_path, cfg.output_format, &rows) {
            Ok(()) => Verdict::Completed,
            Err(e) => Verdict::Failed(e),
        };
        return report(cfg, Some(peak), None, n, verdict);
    }
    let mut out = match cfg.experiment {
        Experiment::Zeta => zeta(cfg),
        Experiment::EulerSum => euler_sum(cfg),
        Experiment::WellDelta => well_limit(cfg, Operator::Identity),
        Experiment::WellHamiltonian => well_limit(cfg, Operator::Hamiltonian),
        Experiment::WellIntegral => well_integral(cfg),
        Experiment::OscDelta => osc_limit(cfg, Operator::Identity),
        Experiment::OscHamiltonian => osc_limit(cfg, Operator::Hamiltonian),
        Experiment::MehlerCheck => mehler_check(cfg),
        Experiment::Sweep => unreachable!(),
    };
    if let Err(e) = write_results(&cfg.output_path, cfg.output_format, &out.rows) {
        out.verdict = Verdict::Failed(e);
    }
    report(
        cfg,
        out.value,
        out.error_estimate,
        out.rows.len(),
        out.verdict,
    )
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn report(
    cfg: &RunConfig,
    value: Option<f64>,
    error_estimate: Option<f64>,
    rows: usize,
    verdict: Verdict,
) -> RunReport {
    let mut summary = format!(
        "{}: value={} error_estimate={} verdict={} rows={} output={}",
        cfg.experiment.name(),
        fmt_opt(value),
        fmt_opt(error_estimate),
        verdict.label(),
        rows,
        cfg.output_path.display()
    );
    if let Verdict::Failed(e) = &verdict {
        summary.push_str(&format!(" detail=\"{e}\""));
    }
    RunReport {
        status: verdict.status(),
        verdict,
        value,
        error_estimate,
        rows,
        summary,
    }
}

fn elapsed_ms(cfg: &RunConfig, since: Instant) -> f64 {
    if cfg.record_timing {
        since.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    }
}

/// Known value of zeta(s) from an independent route, where one exists.
fn zeta_reference(s: f64) -> Option<f64> {
    if s > 1.0 {
        zeta_direct(s, 1e-13).ok()
    } else if s <= 0.0 && s.fract() == 0.0 && s >= -14.0 {
        zeta_at_nonpositive_integer((-s) as u32)
    } else {
        None
    }
}

fn zeta(cfg: &RunConfig) -> Outcome {
    let s = cfg.s.expect("validated");
    match eta_sequence(s) {
        Ok(seq) => euler_run(cfg, &seq, zeta_reference(s)),
        Err(e) => failed(Vec::new(), e),
    }
}

fn euler_sum(cfg: &RunConfig) -> Outcome {
    let (seq, reference) = match cfg.series {
        SeriesKind::Ones => (CoefficientSequence::ones(), None),
        SeriesKind::Alternating => (CoefficientSequence::alternating_unit(), Some(-0.5)),
        SeriesKind::Naturals => (CoefficientSequence::naturals(), None),
        SeriesKind::AlternatingNaturals => (
            CoefficientSequence::new(1, |n| {
                if n % 2 == 1 {
                    -(n as f64) / 3.0
                } else {
                    n as f64 / 3.0
                }
            })
            .with_growth_hint(1.0 / 3.0, 1.0),
            Some(-1.0 / 12.0),
        ),
        SeriesKind::GeometricHalf => (CoefficientSequence::geometric(0.5), Some(2.0)),
    };
    euler_run(cfg, &seq, reference)
}

/// One row per schedule point, carrying the running extrapolant.
fn euler_run(cfg: &RunConfig, seq: &CoefficientSequence, reference: Option<f64>) -> Outcome {
    let mut rows = Vec::new();
    let mut last = Instant::now();
    let result = euler_limit_observed(seq, &cfg.euler_config(), |p| {
        let mut row = ResultRow::new(p.k, p.t, p.extrapolant, reference);
        row.wall_time_ms = elapsed_ms(cfg, last);
        last = Instant::now();
        rows.push(row);
    });
    match result {
        Ok(r) => {
            let verdict = if r.converged {
                Verdict::Converged
            } else if cfg.strict {
                Verdict::Failed(Error::NoEulerSum {
                    reason: format!("extrapolation did not settle ({:?})", r.stop),
                })
            } else {
                Verdict::NotConverged
            };
            Outcome {
                rows,
                value: Some(r.value),
                error_estimate: Some(r.error_estimate),
                verdict,
            }
        }
        Err(e) => failed(rows, e),
    }
}

fn failed(rows: Vec<ResultRow>, e: Error) -> Outcome {
    let value = rows.last().map(|r| r.value);
    Outcome {
        rows,
        value,
        error_estimate: None,
        verdict: Verdict::Failed(e),
    }
}

pub fn well_test_function(y: f64) -> f64 {
    y * (PI - y)
}

pub fn osc_test_function(y: f64) -> f64 {
    (-y * y).exp()
}

/// `-g''/2 + x^2 g/2` for `g = exp(-x^2)`.
pub fn osc_test_hamiltonian(x: f64) -> f64 {
    (1.0 - 1.5 * x * x) * (-x * x).exp()
}

fn well_limit(cfg: &RunConfig, op: Operator) -> Outcome {
    let x = cfg.x;
    let reference = match op {
        Operator::Identity => well_test_function(x),
        Operator::Hamiltonian => 1.0,
    };
    let quad = cfg.quadrature;
    schedule_run(cfg, reference, LIMIT_TOLERANCE, |t| {
        well_action(x, t, well_test_function, &quad, op)
    })
}

fn osc_limit(cfg: &RunConfig, op: Operator) -> Outcome {
    let x = cfg.x;
    let reference = match op {
        Operator::Identity => osc_test_function(x),
        Operator::Hamiltonian => osc_test_hamiltonian(x),
    };
    let quad = cfg.quadrature;
    schedule_run(cfg, reference, LIMIT_TOLERANCE, |t| {
        osc_action(x, t, osc_test_function, &quad, op)
    })
}

fn well_integral(cfg: &RunConfig) -> Outcome {
    let limit = match IntervalIntegralQuery::new(cfg.x, cfg.a, cfg.b, 0.0) {
        Ok(q) => q.limit(),
        Err(e) => return failed(Vec::new(), e),
    };
    schedule_run(cfg, limit, INTERVAL_TOLERANCE, |t| {
        k_interval_integral(&IntervalIntegralQuery::new(cfg.x, cfg.a, cfg.b, t)?).map(|r| r.value)
    })
}

/// Evaluates `f` at every scheduled `t` (in parallel) against a fixed limit.
fn schedule_run<F>(cfg: &RunConfig, reference: f64, tolerance: f64, f: F) -> Outcome
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let evaluated: Vec<(u32, f64, Result<f64>, f64)> = cfg
        .schedule()
        .into_par_iter()
        .map(|(k, t)| {
            let start = Instant::now();
            let v = f(t);
            (k, t, v, elapsed_ms(cfg, start))
        })
        .collect();
    let mut rows = Vec::with_capacity(evaluated.len());
    for (k, t, v, ms) in evaluated {
        match v {
            Ok(v) => {
                let mut row = ResultRow::new(k, t, v, Some(reference));
                row.wall_time_ms = ms;
                rows.push(row);
            }
            Err(e) => return failed(rows, e),
        }
    }
    let errors: Vec<f64> = rows.iter().filter_map(|r| r.abs_error).collect();
    let verdict = if limit_reached(&errors, tolerance) {
        Verdict::Converged
    } else {
        Verdict::NotConverged
    };
    Outcome {
        value: rows.last().map(|r| r.value),
        error_estimate: errors.last().copied(),
        rows,
        verdict,
    }
}

/// Errors strictly decrease over the trailing window and end at or below `tolerance`.
pub fn limit_reached(errors: &[f64], tolerance: f64) -> bool {
    let Some(&last) = errors.last() else {
        return false;
    };
    let tail = &errors[errors.len().saturating_sub(MONOTONE_WINDOW)..];
    last <= tolerance && tail.windows(2).all(|w| w[1] < w[0])
}

fn mehler_check(cfg: &RunConfig) -> Outcome {
    let mut rows = Vec::new();
    for (k, t) in cfg.schedule() {
        let start = Instant::now();
        let row = mehler_terms(t).and_then(|n_max| {
            let p = MehlerPoint::new(cfg.x, cfg.y, t)?;
            Ok(ResultRow::new(
                k,
                t,
                mehler_kernel(&p)?,
                Some(mehler_series(&p, n_max)?),
            ))
        });
        match row {
            Ok(mut row) => {
                row.wall_time_ms = elapsed_ms(cfg, start);
                rows.push(row);
            }
            Err(e) => return failed(rows, e),
        }
    }
    let worst = rows.iter().filter_map(|r| r.abs_error).fold(0.0, f64::max);
    Outcome {
        value: rows.last().map(|r| r.value),
        error_estimate: Some(worst),
        verdict: if worst <= MEHLER_AGREEMENT {
            Verdict::Converged
        } else {
            Verdict::NotConverged
        },
        rows,
    }
}

/// Smallest series length whose tail bound is below the reference accuracy.
fn mehler_terms(t: f64) -> Result<usize> {
    (0..=MAX_OSC_LEVEL)
        .find(|&n| mehler_series_tail_bound(t, n) <= MEHLER_SERIES_TAIL)
        .ok_or(Error::NOverflow {
            n: MAX_OSC_LEVEL + 1,
            max: MAX_OSC_LEVEL,
        })
}

/// Grid for a sweep: the single point `(x, y)` when one was given, otherwise
/// `grid_n` cell midpoints per axis on `(0, pi)` (well) or `grid_n` evenly
/// spaced values on `[-3, 3]` (oscillator).
pub fn sweep_grid(cfg: &RunConfig) -> Vec<(f64, f64)> {
    if cfg.single_point {
        return vec![(cfg.x, cfg.y)];
    }
    let n = cfg.grid_n;
    let axis: Vec<f64> = match cfg.kernel {
        SweepKernel::Well => (0..n).map(|i| PI * (i as f64 + 0.5) / n as f64).collect(),
        SweepKernel::Oscillator if n == 1 => vec![0.0],
        SweepKernel::Oscillator => (0..n)
            .map(|i| -3.0 + 6.0 * i as f64 / (n - 1) as f64)
            .collect(),
    };
    axis.iter()
        .flat_map(|&x| axis.iter().map(move |&y| (x, y)))
        .collect()
}

/// Kernel values at every grid point for every `t` (the fixed `t`, or the
/// schedule), ordered by point index then `k`.
pub fn sweep(cfg: &RunConfig, grid: &[(f64, f64)]) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("sweep grid is empty".into()));
    }
    let ts: Vec<(u32, f64)> = match cfg.fixed_t {
        Some(t) => vec![(0, t)],
        None => cfg.schedule(),
    };
    let kernel = cfg.kernel;
    let mut rows = grid
        .par_iter()
        .enumerate()
        .flat_map_iter(|(point, &(x, y))| {
            ts.iter().map(move |&(k, t)| {
                let value = match kernel {
                    SweepKernel::Well => k_kernel(&WellKernelPoint::new(x, y, t)?)?,
                    SweepKernel::Oscillator => mehler_kernel(&MehlerPoint::new(x, y, t)?)?,
                };
                Ok(SweepRow {
                    point,
                    x,
                    y,
                    k,
                    t,
                    value,
                })
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.point, r.k));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_reached_needs_monotone_tail_and_small_final() {
        assert!(limit_reached(&[0.5, 0.2, 0.1, 0.005], 1e-2));
        assert!(!limit_reached(&[0.5, 0.2, 0.3, 0.005], 1e-2));
        assert!(!limit_reached(&[0.5, 0.2, 0.1, 0.05], 1e-2));
        assert!(!limit_reached(&[], 1e-2));
        // only the trailing window counts
        let mut e = vec![1.0, 2.0];
        e.extend((0..8).map(|i| 0.1 / 2f64.powi(i)));
        assert!(limit_reached(&e, 1e-2));
    }

    #[test]
    fn zeta_reference_routes() {
        assert!((zeta_reference(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-12);
        assert_eq!(zeta_reference(0.0), Some(-0.5));
        assert_eq!(zeta_reference(-0.5), None);
        assert_eq!(zeta_reference(-20.0), None);
    }

    #[test]
    fn mehler_terms_meet_tail() {
        let n = mehler_terms(0.5).unwrap();
        assert!(mehler_series_tail_bound(0.5, n) <= MEHLER_SERIES_TAIL);
        assert!(mehler_series_tail_bound(0.5, n - 1) > MEHLER_SERIES_TAIL);
        assert!(matches!(mehler_terms(0.9999), Err(Error::NOverflow { .. })));
    }

    #[test]
    fn osc_hamiltonian_reference_matches_finite_difference() {
        let h = 1e-4;
        for &x in &[-1.0, 0.0, 0.7] {
            let g2 = (osc_test_function(x + h) - 2.0 * osc_test_function(x)
                + osc_test_function(x - h))
                / (h * h);
            let fd = -0.5 * g2 + 0.5 * x * x * osc_test_function(x);
            assert!((fd - osc_test_hamiltonian(x)).abs() < 1e-6);
        }
    }
}
