//! Abel evaluation of power series and the Euler limit `t -> 1-`.
//!
//! A (possibly divergent) series `sum a_n` is represented by its term oracle.
//! [`abel_eval`] sums `f(t) = sum a_n t^n` for a fixed `0 <= t < 1` with a
//! truncation tail bound, and [`euler_limit`] walks the schedule
//! `t_k = 1 - r^k`, extrapolating `f` to `u = 1 - t = 0` with Neville's
//! scheme through the most recent points.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};

/// Upper bound on the number of terms a single Abel evaluation may use.
pub const MAX_ABEL_TERMS: u64 = 200_000_000;

/// Block length for the plateau test used when no growth hint is known.
const PLATEAU_BLOCK: u64 = 50;

/// Abel evaluations inside [`euler_limit`] run at `tolerance * ABEL_TOL_FACTOR`
/// so that Neville's amplification of evaluation noise stays below tolerance.
const ABEL_TOL_FACTOR: f64 = 1e-2;

/// `|a_n| <= constant * n^exponent` for every `n >= 1` of the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthHint {
    pub constant: f64,
    pub exponent: f64,
}

/// Term oracle `n -> a_n` for `n >= start_index`.
#[derive(Clone)]
pub struct CoefficientSequence {
    start_index: u64,
    term: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
    growth_hint: Option<GrowthHint>,
}

impl fmt::Debug for CoefficientSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoefficientSequence")
            .field("start_index", &self.start_index)
            .field("growth_hint", &self.growth_hint)
            .finish_non_exhaustive()
    }
}

impl CoefficientSequence {
    pub fn new<F>(start_index: u64, term: F) -> Self
    where
        F: Fn(u64) -> f64 + Send + Sync + 'static,
    {
        Self {
            start_index,
            term: Arc::new(term),
            growth_hint: None,
        }
    }

    /// Attaches the bound `|a_n| <= constant * n^exponent`, which enables a
    /// certified truncation tail.
    pub fn with_growth_hint(mut self, constant: f64, exponent: f64) -> Self {
        self.growth_hint = Some(GrowthHint { constant, exponent });
        self
    }

    pub fn start_index(&self) -> u64 {
        self.start_index
    }

    pub fn growth_hint(&self) -> Option<GrowthHint> {
        self.growth_hint
    }

    pub fn term(&self, n: u64) -> f64 {
        (self.term)(n)
    }

    /// `1 + 1 + 1 + ...`
    pub fn ones() -> Self {
        Self::new(0, |_| 1.0).with_growth_hint(1.0, 0.0)
    }

    /// `-1 + 1 - 1 + ...`
    pub fn alternating_unit() -> Self {
        Self::new(0, |n| if n % 2 == 0 { -1.0 } else { 1.0 }).with_growth_hint(1.0, 0.0)
    }

    /// `1 + 2 + 3 + ...`
    pub fn naturals() -> Self {
        Self::new(1, |n| n as f64).with_growth_hint(1.0, 1.0)
    }

    /// `1/2^n`, `n >= 0`; no growth hint, so truncation uses the plateau test.
    pub fn geometric(ratio: f64) -> Self {
        Self::new(0, move |n| ratio.powf(n as f64))
    }
}

/// Value of `f(t) = sum a_n t^n` with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbelEvaluation {
    pub t: f64,
    pub value: f64,
    pub terms_used: u64,
    /// Bound on the discarded tail (certified when a growth hint is present).
    pub tail_bound: f64,
    /// Floating-point error estimate of the retained partial sum.
    pub rounding_bound: f64,
}

/// Neumaier-compensated accumulator that also tracks `sum |x|`.
#[derive(Debug, Default, Clone, Copy)]
struct Accumulator {
    sum: f64,
    compensation: f64,
    abs_sum: f64,
}

impl Accumulator {
    fn add(&mut self, x: f64) {
        let s = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - s) + x;
        } else {
            self.compensation += (x - s) + self.sum;
        }
        self.sum = s;
        self.abs_sum += x.abs();
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    fn rounding_bound(&self) -> f64 {
        4.0 * f64::EPSILON * self.abs_sum
    }
}

/// Bound on `sum_{n > last} C n^gamma t^n`.
///
/// For `n > last` the ratio of successive majorant terms is at most
/// `q = ((last + 2) / (last + 1))^max(gamma, 0) * t`, so the tail is dominated
/// by a geometric series starting at `C (last + 1)^gamma t^(last + 1)`.
pub fn growth_tail_bound(hint: GrowthHint, last: u64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let next = last as f64 + 1.0;
    let q = ((next + 1.0) / next).powf(hint.exponent.max(0.0)) * t;
    if q >= 1.0 {
        return f64::INFINITY;
    }
    let lead = (hint.constant.ln() + hint.exponent * next.ln() + next * t.ln()).exp();
    lead / (1.0 - q)
}

/// Sums `f(t) = sum a_n t^n` until the tail bound is at most `tol`.
pub fn abel_eval(seq: &CoefficientSequence, t: f64, tol: f64) -> Result<AbelEvaluation> {
    check_unit_interval(t)?;
    if !(tol > 0.0) {
        return Err(Error::DomainError(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    match seq.growth_hint {
        Some(hint) => abel_hinted(seq, hint, t, tol),
        None => abel_plateau(seq, t, tol),
    }
}

fn abel_hinted(
    seq: &CoefficientSequence,
    hint: GrowthHint,
    t: f64,
    tol: f64,
) -> Result<AbelEvaluation> {
    let mut acc = Accumulator::default();
    let mut power = t.powf(seq.start_index as f64);
    let mut n = seq.start_index;
    loop {
        let a = seq.term(n);
        if !a.is_finite() {
            return Err(Error::DomainError(format!("term a_{n} is not finite")));
        }
        acc.add(a * power);
        let used = n - seq.start_index + 1;
        let tail = growth_tail_bound(hint, n, t);
        if tail <= tol {
            return Ok(AbelEvaluation {
                t,
                value: acc.value(),
                terms_used: used,
                tail_bound: tail,
                rounding_bound: acc.rounding_bound(),
            });
        }
        if used >= MAX_ABEL_TERMS {
            return Err(Error::TailNotBounded { terms: used });
        }
        n += 1;
        power *= t;
    }
}

fn abel_plateau(seq: &CoefficientSequence, t: f64, tol: f64) -> Result<AbelEvaluation> {
    let threshold = tol / 100.0;
    let mut acc = Accumulator::default();
    let mut power = t.powf(seq.start_index as f64);
    let mut n = seq.start_index;
    let mut previous_block_max: Option<f64> = None;
    let mut block_max = 0.0_f64;
    let mut in_block = 0;
    loop {
        let scaled = seq.term(n) * power;
        if !scaled.is_finite() {
            return Err(Error::TailNotBounded {
                terms: n - seq.start_index + 1,
            });
        }
        acc.add(scaled);
        block_max = block_max.max(scaled.abs());
        in_block += 1;
        let used = n - seq.start_index + 1;
        if in_block == PLATEAU_BLOCK {
            if block_max < threshold {
                // every term of the block is small; the tail must also shrink geometrically
                let tail = match previous_block_max {
                    _ if block_max == 0.0 => Some(0.0),
                    Some(prev) if prev > block_max => {
                        let per_term = (block_max / prev).powf(1.0 / PLATEAU_BLOCK as f64);
                        Some(PLATEAU_BLOCK as f64 * block_max * per_term / (1.0 - per_term))
                    }
                    _ => None,
                };
                if let Some(tail) = tail.filter(|&tail| tail <= tol) {
                    return Ok(AbelEvaluation {
                        t,
                        value: acc.value(),
                        terms_used: used,
                        tail_bound: tail,
                        rounding_bound: acc.rounding_bound(),
                    });
                }
            }
            previous_block_max = Some(block_max);
            block_max = 0.0;
            in_block = 0;
        }
        if used >= MAX_ABEL_TERMS {
            return Err(Error::TailNotBounded { terms: used });
        }
        n += 1;
        power *= t;
    }
}

/// Schedule and stopping rules for [`euler_limit`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerLimitConfig {
    /// Schedule ratio `r`; `t_k = 1 - r^k`.
    pub ratio: f64,
    pub k_max: u32,
    /// Number of trailing trace points the extrapolating polynomial passes through.
    pub extrapolation_order: usize,
    pub tolerance: f64,
}

impl Default for EulerLimitConfig {
    fn default() -> Self {
        Self {
            ratio: 0.5,
            k_max: 40,
            extrapolation_order: 6,
            tolerance: 1e-8,
        }
    }
}

impl EulerLimitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "ratio must lie in (0, 1), got {}",
                self.ratio
            )));
        }
        if self.k_max == 0 {
            return Err(Error::InvalidConfig("k_max must be at least 1".into()));
        }
        if self.extrapolation_order == 0 {
            return Err(Error::InvalidConfig(
                "extrapolation order must be at least 1".into(),
            ));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        let schedule = self.schedule();
        if schedule.iter().any(|&t| t >= 1.0) || schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(format!(
                "schedule 1 - {}^k is not strictly increasing below 1 up to k = {}",
                self.ratio, self.k_max
            )));
        }
        Ok(())
    }

    /// `t_k = 1 - r^k` for `k = 1..=k_max`.
    pub fn schedule(&self) -> Vec<f64> {
        (1..=self.k_max)
            .map(|k| schedule_point(self.ratio, k))
            .collect()
    }
}

pub fn schedule_point(ratio: f64, k: u32) -> f64 {
    1.0 - ratio.powi(k as i32)
}

/// One step of the Euler-limit walk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub k: u32,
    pub t: f64,
    /// `f(t_k)`.
    pub value: f64,
    pub terms_used: u64,
    pub tail_bound: f64,
    /// Extrapolated limit through the trailing points up to and including this one.
    pub extrapolant: f64,
}

/// Why the walk stopped without a converged value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    Converged,
    ScheduleExhausted,
    /// Cancellation in `f(t_k)` would exceed the tolerance at the next point.
    PrecisionFloor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerLimitResult {
    pub value: f64,
    /// Difference between the last two extrapolants; a residual, not a rigorous bound.
    pub error_estimate: f64,
    pub converged: bool,
    pub stop: StopReason,
    pub trace: Vec<TracePoint>,
}

/// Evaluates the polynomial through `(u_i, f_i)` at `u = 0`.
pub fn neville_at_zero(points: &[(f64, f64)]) -> f64 {
    let mut p: Vec<f64> = points.iter().map(|&(_, f)| f).collect();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (ui, uj) = (points[i].0, points[i + level].0);
            p[i] = (uj * p[i] - ui * p[i + 1]) / (uj - ui);
        }
    }
    p[0]
}

/// `lim_{t -> 1-} sum a_n t^n`, if the walk can establish it.
///
/// Returns [`Error::NoEulerSum`] when three successive extrapolants each more
/// than double in magnitude, when `|f(t_k)|` exceeds `1 / tolerance`, or when
/// the extrapolant increments stop contracting. A walk that runs out of
/// schedule or of floating-point precision returns `converged = false`.
pub fn euler_limit(seq: &CoefficientSequence, cfg: &EulerLimitConfig) -> Result<EulerLimitResult> {
    euler_limit_observed(seq, cfg, |_| {})
}

/// [`euler_limit`], calling `observe` on each trace point as it is produced.
pub fn euler_limit_observed<O: FnMut(&TracePoint)>(
    seq: &CoefficientSequence,
    cfg: &EulerLimitConfig,
    mut observe: O,
) -> Result<EulerLimitResult> {
    cfg.validate()?;
    let tol = cfg.tolerance;
    let abel_tol = tol * ABEL_TOL_FACTOR;
    let m = cfg.extrapolation_order;
    let mut trace: Vec<TracePoint> = Vec::new();
    let mut stop = StopReason::ScheduleExhausted;

    for k in 1..=cfg.k_max {
        let t = schedule_point(cfg.ratio, k);
        let ev = abel_eval(seq, t, abel_tol)?;
        if !ev.value.is_finite() || ev.value.abs() > 1.0 / tol {
            return Err(Error::NoEulerSum {
                reason: format!(
                    "|f(t)| = {:e} exceeds 1/tolerance at t = {t}",
                    ev.value.abs()
                ),
            });
        }
        if ev.rounding_bound > tol {
            stop = StopReason::PrecisionFloor;
            break;
        }
        let start = trace.len().saturating_sub(m - 1);
        let mut window: Vec<(f64, f64)> = trace[start..]
            .iter()
            .map(|p| (1.0 - p.t, p.value))
            .collect();
        window.push((cfg.ratio.powi(k as i32), ev.value));
        let extrapolant = neville_at_zero(&window);
        trace.push(TracePoint {
            k,
            t,
            value: ev.value,
            terms_used: ev.terms_used,
            tail_bound: ev.tail_bound,
            extrapolant,
        });
        observe(trace.last().unwrap());

        let e: Vec<f64> = trace.iter().map(|p| p.extrapolant).collect();
        let len = e.len();
        if len >= 4 {
            let last4 = &e[len - 4..];
            let doubling = last4.windows(2).all(|w| w[1].abs() > 2.0 * w[0].abs());
            if doubling && last4[3].abs() > 100.0 * tol {
                return Err(Error::NoEulerSum {
                    reason: format!("extrapolants grow without bound (latest {:e})", last4[3]),
                });
            }
        }
        if len > m {
            let diff = (e[len - 1] - e[len - 2]).abs();
            if diff <= tol {
                return Ok(EulerLimitResult {
                    value: e[len - 1],
                    error_estimate: diff,
                    converged: true,
                    stop: StopReason::Converged,
                    trace,
                });
            }
        }
        if len >= m + 3 {
            let d: Vec<f64> = e[len - 4..]
                .windows(2)
                .map(|w| (w[1] - w[0]).abs())
                .collect();
            if d[0] <= d[1] && d[1] <= d[2] {
                return Err(Error::NoEulerSum {
                    reason: format!(
                        "extrapolants oscillate without contraction (latest change {:e})",
                        d[2]
                    ),
                });
            }
        }
    }

    let Some(last) = trace.last() else {
        return Err(Error::NoEulerSum {
            reason: "floating-point cancellation exceeds the tolerance at the first schedule point"
                .into(),
        });
    };
    let error_estimate = match trace.len() {
        1 => f64::INFINITY,
        n => (trace[n - 1].extrapolant - trace[n - 2].extrapolant).abs(),
    };
    Ok(EulerLimitResult {
        value: last.extrapolant,
        error_estimate,
        converged: false,
        stop,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(seq: &CoefficientSequence, t: f64, terms: u64) -> f64 {
        (0..terms)
            .map(|i| {
                let n = seq.start_index() + i;
                seq.term(n) * t.powi(n as i32)
            })
            .sum()
    }

    #[test]
    fn geometric_half_has_sum_two() {
        let seq = CoefficientSequence::geometric(0.5);
        // t = 1 itself is outside the Abel domain
        assert_eq!(
            abel_eval(&seq, 1.0, 1e-10),
            Err(Error::TNotInUnitInterval { t: 1.0 })
        );
        let ev = abel_eval(&seq, 1.0 - 1e-13, 1e-10).unwrap();
        assert!((ev.value - 2.0).abs() < 1e-9, "{}", ev.value);
        let r = euler_limit(&seq, &EulerLimitConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn alternating_from_one_at_half() {
        let seq = CoefficientSequence::new(1, |n| if n % 2 == 1 { 1.0 } else { -1.0 })
            .with_growth_hint(1.0, 0.0);
        let ev = abel_eval(&seq, 0.5, 1e-12).unwrap();
        assert!((ev.value - 1.0 / 3.0).abs() < 1e-12);
        assert!(ev.tail_bound <= 1e-12);
    }

    #[test]
    fn squares_at_point_nine_match_partial_sum() {
        let seq = CoefficientSequence::new(0, |n| (n * n) as f64).with_growth_hint(1.0, 2.0);
        let ev = abel_eval(&seq, 0.9, 1e-10).unwrap();
        let oracle = brute(&seq, 0.9, 501);
        // t(1+t)/(1-t)^3 = 1710
        assert!((oracle - 1710.0).abs() < 1e-8);
        assert!(
            (ev.value - oracle).abs() < 1e-9,
            "{} vs {}",
            ev.value,
            oracle
        );
    }

    #[test]
    fn rejects_t_outside_unit_interval() {
        let seq = CoefficientSequence::ones();
        assert!(matches!(
            abel_eval(&seq, -0.1, 1e-6),
            Err(Error::TNotInUnitInterval { .. })
        ));
        assert!(matches!(
            abel_eval(&seq, 1.5, 1e-6),
            Err(Error::TNotInUnitInterval { .. })
        ));
    }

    #[test]
    fn unbounded_plateau_reports_tail_not_bounded() {
        // 3^n t^n diverges for t = 0.5
        let seq = CoefficientSequence::new(0, |n| 3f64.powf(n as f64));
        assert!(matches!(
            abel_eval(&seq, 0.5, 1e-8),
            Err(Error::TailNotBounded { .. })
        ));
    }

    #[test]
    fn oscillatory_coefficients_without_hint() {
        let seq = CoefficientSequence::new(0, |n| (n as f64).cos());
        let t: f64 = 0.8;
        let ev = abel_eval(&seq, t, 1e-10).unwrap();
        // Re 1/(1 - t e^{i})
        let exact = (1.0 - t * 1f64.cos()) / (1.0 - 2.0 * t * 1f64.cos() + t * t);
        assert!((ev.value - exact).abs() < 1e-10);
    }

    #[test]
    fn alternating_unit_series_is_minus_half() {
        let r = euler_limit(
            &CoefficientSequence::alternating_unit(),
            &EulerLimitConfig::default(),
        )
        .unwrap();
        assert!(r.converged);
        assert!((r.value + 0.5).abs() < 1e-8);
        assert!(r.error_estimate <= 1e-8);
    }

    #[test]
    fn ones_has_no_euler_sum() {
        let r = euler_limit(&CoefficientSequence::ones(), &EulerLimitConfig::default());
        assert!(matches!(r, Err(Error::NoEulerSum { .. })), "{r:?}");
    }

    #[test]
    fn naturals_have_no_euler_sum() {
        let r = euler_limit(
            &CoefficientSequence::naturals(),
            &EulerLimitConfig::default(),
        );
        assert!(matches!(r, Err(Error::NoEulerSum { .. })), "{r:?}");
    }

    #[test]
    fn alternating_naturals_over_three_give_minus_one_twelfth() {
        let seq = CoefficientSequence::new(1, |n| {
            let v = n as f64 / 3.0;
            if n % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .with_growth_hint(1.0 / 3.0, 1.0);
        let r = euler_limit(&seq, &EulerLimitConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.value + 1.0 / 12.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn schedule_independence() {
        let seq = CoefficientSequence::alternating_unit();
        let half = euler_limit(&seq, &EulerLimitConfig::default()).unwrap();
        let third = euler_limit(
            &seq,
            &EulerLimitConfig {
                ratio: 1.0 / 3.0,
                k_max: 30,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((half.value - third.value).abs() <= 10.0 * 1e-8);
    }

    #[test]
    fn trace_matches_brute_force_partial_sums() {
        let seq = CoefficientSequence::new(1, |n| {
            let v = n as f64 / 3.0;
            if n % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .with_growth_hint(1.0 / 3.0, 1.0);
        let r = euler_limit(&seq, &EulerLimitConfig::default()).unwrap();
        let mut prev = 0.0;
        for p in &r.trace {
            assert!(p.t > prev);
            prev = p.t;
            let oracle = brute(&seq, p.t, p.terms_used);
            assert!(
                (p.value - oracle).abs() <= p.tail_bound + 1e-12,
                "k = {}",
                p.k
            );
            // closed form -t / (3 (1 + t)^2)
            let exact = -p.t / (3.0 * (1.0 + p.t).powi(2));
            assert!((p.value - exact).abs() <= 2.0 * p.tail_bound + 1e-12);
        }
    }

    #[test]
    fn neville_reproduces_polynomials() {
        // 3 - 2u + u^2 through three points
        let pts: Vec<(f64, f64)> = [0.5, 0.25, 0.125]
            .iter()
            .map(|&u| (u, 3.0 - 2.0 * u + u * u))
            .collect();
        assert!((neville_at_zero(&pts) - 3.0).abs() < 1e-14);
        assert_eq!(neville_at_zero(&[(0.3, 7.0)]), 7.0);
    }

    #[test]
    fn config_validation() {
        let bad = |cfg: EulerLimitConfig| matches!(cfg.validate(), Err(Error::InvalidConfig(_)));
        assert!(bad(EulerLimitConfig {
            ratio: 1.0,
            ..Default::default()
        }));
        assert!(bad(EulerLimitConfig {
            ratio: 0.0,
            ..Default::default()
        }));
        assert!(bad(EulerLimitConfig {
            tolerance: 0.0,
            ..Default::default()
        }));
        assert!(bad(EulerLimitConfig {
            extrapolation_order: 0,
            ..Default::default()
        }));
        // 1 - 0.5^60 rounds to 1
        assert!(bad(EulerLimitConfig {
            k_max: 60,
            ..Default::default()
        }));
        assert!(EulerLimitConfig::default().validate().is_ok());
    }

    #[test]
    fn precision_floor_is_reported_not_masked() {
        // n^5 alternating: cancellation swamps double precision near t = 1
        let seq = CoefficientSequence::new(1, |n| {
            let v = (n as f64).powi(5);
            if n % 2 == 1 {
                v
            } else {
                -v
            }
        })
        .with_growth_hint(1.0, 5.0);
        match euler_limit(&seq, &EulerLimitConfig::default()) {
            Ok(r) => {
                assert!(!r.converged);
                assert_eq!(r.stop, StopReason::PrecisionFloor);
            }
            Err(e) => assert_eq!(e.name(), "NoEulerSum"),
        }
    }

    #[test]
    fn tail_bound_is_valid_majorant() {
        let hint = GrowthHint {
            constant: 2.0,
            exponent: 1.5,
        };
        for &(last, t) in &[(10u64, 0.9f64), (100, 0.99), (3, 0.5)] {
            let direct: f64 = ((last + 1)..(last + 200_000))
                .map(|n| 2.0 * (n as f64).powf(1.5) * t.powi(n as i32))
                .sum();
            assert!(growth_tail_bound(hint, last, t) >= direct);
        }
    }

    proptest! {
        #[test]
        fn larger_tolerance_never_needs_more_terms(
            t in 0.0f64..0.99,
            tol in 1e-12f64..1e-3,
            factor in 1.0f64..1e4,
            gamma in -2.0f64..3.0,
        ) {
            let seq = CoefficientSequence::new(1, move |n| (n as f64).powf(gamma) * (n as f64).sin())
                .with_growth_hint(1.0, gamma);
            let tight = abel_eval(&seq, t, tol).unwrap();
            let loose = abel_eval(&seq, t, tol * factor).unwrap();
            prop_assert!(loose.terms_used <= tight.terms_used);
            prop_assert!(tight.tail_bound <= tol);
        }

        #[test]
        fn absolutely_convergent_series_sum_to_their_value(ratio in -0.9f64..0.9) {
            let seq = CoefficientSequence::new(0, move |n| ratio.powi(n as i32)).with_growth_hint(1.0, 0.0);
            let cfg = EulerLimitConfig::default();
            let r = euler_limit(&seq, &cfg).unwrap();
            prop_assert!(r.converged);
            prop_assert!((r.value - 1.0 / (1.0 - ratio)).abs() <= 10.0 * cfg.tolerance);
        }
    }
}
