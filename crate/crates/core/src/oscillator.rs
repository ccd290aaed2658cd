//! Hermite functions, the Mehler kernel, and the regulated Hamiltonian kernel
//! of the harmonic oscillator `-1/2 d^2/dx^2 + x^2/2`.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::quadrature::{graded_edges, integrate, QuadratureSpec};
use crate::Operator;

/// Highest level `phi_osc` evaluates; the log-domain normalization itself
/// has no overflow, the cap bounds series cost.
pub const MAX_OSC_LEVEL: usize = 2000;

/// Integrand magnitude at the window edge relative to its peak above which
/// an oscillator action is rejected.
const TRUNCATION_RATIO: f64 = 1e-14;

const OSC_MAX_PANEL: f64 = 0.5;

const RESCALE: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MehlerPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl MehlerPoint {
    pub fn new(x: f64, y: f64, t: f64) -> Result<Self> {
        let p = Self { x, y, t };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x.is_finite() && self.y.is_finite()) {
            return Err(Error::DomainError(format!(
                "non-finite point ({}, {})",
                self.x, self.y
            )));
        }
        check_unit_interval(self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorEigenstate {
    pub n: usize,
    pub energy: f64,
}

impl OscillatorEigenstate {
    pub fn new(n: usize) -> Result<Self> {
        check_level(n)?;
        Ok(Self {
            n,
            energy: n as f64 + 0.5,
        })
    }

    pub fn value(&self, x: f64) -> f64 {
        phi_osc_unchecked(self.n, x)
    }
}

fn check_level(n: usize) -> Result<()> {
    if n > MAX_OSC_LEVEL {
        Err(Error::NOverflow {
            n,
            max: MAX_OSC_LEVEL,
        })
    } else {
        Ok(())
    }
}

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence.
/// Overflows to infinity for large `n |x|`; use [`phi_osc`] for normalized values.
pub fn hermite(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Successive `phi_0(x), phi_1(x), ...` computed in the log domain:
/// `H_n` is carried with a separate scale exponent and combined with
/// `-x^2/2 - 1/2 ln(2^n n! sqrt(pi))` before exponentiating.
#[derive(Debug, Clone)]
struct HermiteFunctions {
    x: f64,
    n: usize,
    prev: f64,
    cur: f64,
    log_scale: f64,
    log_norm: f64,
}

impl HermiteFunctions {
    fn new(x: f64) -> Self {
        Self {
            x,
            n: 0,
            prev: 0.0,
            cur: 1.0,
            log_scale: 0.0,
            log_norm: 0.25 * PI.ln(),
        }
    }
}

impl Iterator for HermiteFunctions {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let value = if self.cur == 0.0 {
            0.0
        } else {
            let log_mag =
                -0.5 * self.x * self.x + self.cur.abs().ln() + self.log_scale - self.log_norm;
            self.cur.signum() * log_mag.exp()
        };
        let n = self.n as f64;
        let next = 2.0 * self.x * self.cur - 2.0 * n * self.prev;
        self.prev = self.cur;
        self.cur = next;
        if self.cur.abs() > RESCALE {
            self.cur /= RESCALE;
            self.prev /= RESCALE;
            self.log_scale += RESCALE.ln();
        }
        self.n += 1;
        self.log_norm += 0.5 * (LN_2 + (n + 1.0).ln());
        Some(value)
    }
}

/// Normalized eigenfunction `(2^n n! sqrt(pi))^(-1/2) e^(-x^2/2) H_n(x)`.
pub fn phi_osc(n: usize, x: f64) -> Result<f64> {
    check_level(n)?;
    Ok(phi_osc_unchecked(n, x))
}

fn phi_osc_unchecked(n: usize, x: f64) -> f64 {
    HermiteFunctions::new(x).nth(n).unwrap_or(0.0)
}

fn check_open_unit(t: f64) -> Result<()> {
    if t > -1.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::TNotInUnitInterval { t })
    }
}

/// Exponent of the Mehler kernel as it comes out of the Gaussian integral:
/// `(x^2 - y^2)/2 - (x - yt)^2 / (1 - t^2)`.
pub fn mehler_exponent(x: f64, y: f64, t: f64) -> Result<f64> {
    check_open_unit(t)?;
    Ok(0.5 * (x * x - y * y) - (x - y * t).powi(2) / ((1.0 - t) * (1.0 + t)))
}

/// `-(1-t)/(1+t) (x+y)^2/4 - (1+t)/(1-t) (x-y)^2/4`, identical to
/// [`mehler_exponent`] and manifestly symmetric.
pub fn symmetrized_exponent(x: f64, y: f64, t: f64) -> Result<f64> {
    check_open_unit(t)?;
    Ok(symmetrized_unchecked(x, y, t))
}

fn symmetrized_unchecked(x: f64, y: f64, t: f64) -> f64 {
    let (alpha, beta) = ((1.0 - t) / (1.0 + t), (1.0 + t) / (1.0 - t));
    -0.25 * (alpha * (x + y).powi(2) + beta * (x - y).powi(2))
}

fn mehler_prefactor(t: f64) -> f64 {
    1.0 / (PI * (1.0 - t) * (1.0 + t)).sqrt()
}

fn mehler_unchecked(x: f64, y: f64, t: f64) -> f64 {
    mehler_prefactor(t) * symmetrized_unchecked(x, y, t).exp()
}

/// Closed-form `sum t^n phi_n(x) phi_n(y)`.
pub fn mehler_kernel(p: &MehlerPoint) -> Result<f64> {
    p.validate()?;
    Ok(mehler_unchecked(p.x, p.y, p.t))
}

/// Truncated `sum_{n=0}^{n_max} t^n phi_n(x) phi_n(y)`.
pub fn mehler_series(p: &MehlerPoint, n_max: usize) -> Result<f64> {
    weighted_series(p, n_max, |_| 1.0)
}

/// Truncated `sum_{n=0}^{n_max} (n + 1/2) t^n phi_n(x) phi_n(y)`.
pub fn osc_h_series(p: &MehlerPoint, n_max: usize) -> Result<f64> {
    weighted_series(p, n_max, |n| n + 0.5)
}

fn weighted_series(p: &MehlerPoint, n_max: usize, weight: impl Fn(f64) -> f64) -> Result<f64> {
    p.validate()?;
    check_level(n_max)?;
    let mut power = 1.0;
    let mut sum = 0.0;
    let levels = HermiteFunctions::new(p.x).zip(HermiteFunctions::new(p.y));
    for (n, (fx, fy)) in levels.take(n_max + 1).enumerate() {
        sum += weight(n as f64) * power * fx * fy;
        power *= p.t;
    }
    Ok(sum)
}

/// Tail bound for [`mehler_series`] from `|phi_n| <= pi^(-1/4)`.
pub fn mehler_series_tail_bound(t: f64, n_max: usize) -> f64 {
    t.powi(n_max as i32 + 1) / ((1.0 - t) * PI.sqrt())
}

/// Which operator identity produces the Hamiltonian kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HamiltonianRoute {
    /// `(t d/dt + 1/2) K`
    TDerivative,
    /// `(-1/2 d^2/dy^2 + y^2/2) K`
    YOperator,
}

/// Regulated Hamiltonian kernel `sum (n + 1/2) t^n phi_n(x) phi_n(y)`.
///
/// With `K = A(t) e^E`, `A = (pi (1 - t^2))^(-1/2)`, `alpha = (1-t)/(1+t)`,
/// `beta = 1/alpha` and `E = -alpha (x+y)^2/4 - beta (x-y)^2/4`:
///
/// ```text
/// TDerivative: K [t^2/(1-t^2) + t E_t + 1/2],
///              E_t = (x+y)^2 / (2 (1+t)^2) - (x-y)^2 / (2 (1-t)^2)
/// YOperator:   K [-(E_y^2 + E_yy)/2 + y^2/2],
///              E_y = -alpha (x+y)/2 + beta (x-y)/2,  E_yy = -(alpha + beta)/2
/// ```
pub fn osc_h_kernel(p: &MehlerPoint, route: HamiltonianRoute) -> Result<f64> {
    p.validate()?;
    Ok(osc_h_unchecked(p.x, p.y, p.t, route))
}

fn osc_h_unchecked(x: f64, y: f64, t: f64, route: HamiltonianRoute) -> f64 {
    let k = mehler_unchecked(x, y, t);
    let (sum, diff) = (x + y, x - y);
    let factor = match route {
        HamiltonianRoute::TDerivative => {
            let e_t =
                sum * sum / (2.0 * (1.0 + t).powi(2)) - diff * diff / (2.0 * (1.0 - t).powi(2));
            t * t / ((1.0 - t) * (1.0 + t)) + t * e_t + 0.5
        }
        HamiltonianRoute::YOperator => {
            let (alpha, beta) = ((1.0 - t) / (1.0 + t), (1.0 + t) / (1.0 - t));
            let e_y = 0.5 * (beta * diff - alpha * sum);
            let e_yy = -0.5 * (alpha + beta);
            -0.5 * (e_y * e_y + e_yy) + 0.5 * y * y
        }
    };
    k * factor
}

/// `int K(x, y, t) g(y) dy` (identity) or `int H(x, y, t) g(y) dy`
/// (Hamiltonian) over `[x - L, x + L]`, `L = |x| + 10 / sqrt(1 - t)`.
/// As `t -> 1-` these approach `g(x)` and `-g''(x)/2 + x^2 g(x)/2`.
pub fn osc_action<G: Fn(f64) -> f64>(
    x: f64,
    t: f64,
    g: G,
    quad: &QuadratureSpec,
    operator: Operator,
) -> Result<f64> {
    check_unit_interval(t)?;
    if !x.is_finite() {
        return Err(Error::DomainError(format!("x = {x} is not finite")));
    }
    let half_width = x.abs() + 10.0 / (1.0 - t).sqrt();
    let edges = graded_edges(
        -half_width,
        half_width,
        x,
        (1.0 - t).sqrt() / 4.0,
        OSC_MAX_PANEL,
    );
    let integrand = |y: f64| {
        let kernel = match operator {
            Operator::Identity => mehler_unchecked(x, y, t),
            Operator::Hamiltonian => osc_h_unchecked(x, y, t, HamiltonianRoute::YOperator),
        };
        kernel * g(y)
    };
    let peak = edges
        .iter()
        .map(|&y| integrand(y).abs())
        .fold(0.0, f64::max);
    let edge = integrand(-half_width)
        .abs()
        .max(integrand(half_width).abs());
    if edge > TRUNCATION_RATIO * peak {
        return Err(Error::TruncationInsufficient { half_width });
    }
    Ok(integrate(integrand, &edges, quad)?.value)
}
