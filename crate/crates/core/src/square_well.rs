//! Regulated completeness and Hamiltonian kernels for the infinite square
//! well on `[0, pi]` (unit mass, `hbar = 1`).
//!
//! With eigenfunctions `phi_n(x) = sqrt(2/pi) sin(nx)` and energies
//! `E_n = n^2 / 2`, the regulated completeness sum
//! `K(x, y, t) = sum t^n phi_n(x) phi_n(y)` has the closed form
//! `D(x - y, t) - D(x + y, t)` where
//!
//! ```text
//! D(z, t) = (1 - t cos z) / (pi (1 - 2t cos z + t^2))
//!         = (1 + P(z, t)) / (2 pi),   P = (1 - t^2) / (1 - 2t cos z + t^2)
//! ```
//!
//! `P` is the Poisson kernel. The Hamiltonian kernel is
//! `H = -1/2 d^2K/dy^2 = -1/2 (D''(x - y) - D''(x + y))`.
//! The denominator is evaluated as `(1 - t)^2 + 4t sin^2(z/2)`, which stays
//! accurate when `t -> 1` and `z -> 0` simultaneously.

use std::f64::consts::{FRAC_2_PI, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::quadrature::{graded_edges, integrate, QuadratureSpec};
use crate::resummation::{growth_tail_bound, GrowthHint};
use crate::Operator;

/// Widest panel used for well quadratures.
const WELL_MAX_PANEL: f64 = 0.25;

/// `|g(0)| + |g(pi)|` above this rejects a test function.
const BOUNDARY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellKernelPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl WellKernelPoint {
    pub fn new(x: f64, y: f64, t: f64) -> Result<Self> {
        let p = Self { x, y, t };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_in_well(self.x)?;
        check_in_well(self.y)?;
        check_unit_interval(self.t)
    }
}

fn check_in_well(x: f64) -> Result<()> {
    if (0.0..=PI).contains(&x) {
        Ok(())
    } else {
        Err(Error::DomainError(format!(
            "coordinate {x} is outside [0, pi]"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellEigenstate {
    pub n: u32,
    pub energy: f64,
}

impl WellEigenstate {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::DomainError(
                "square-well levels start at n = 1".into(),
            ));
        }
        Ok(Self {
            n,
            energy: 0.5 * f64::from(n) * f64::from(n),
        })
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        phi_well(self.n, x)
    }
}

/// `sqrt(2/pi) sin(n x)`.
pub fn phi_well(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::DomainError(
            "square-well levels start at n = 1".into(),
        ));
    }
    check_in_well(x)?;
    Ok(FRAC_2_PI.sqrt() * (f64::from(n) * x).sin())
}

/// `1 - 2t cos z + t^2`, written to avoid cancellation near `t = 1, z = 0`.
fn poisson_denominator(z: f64, t: f64) -> f64 {
    let s = (0.5 * z).sin();
    (1.0 - t) * (1.0 - t) + 4.0 * t * s * s
}

/// `D(z, t)`; even and `2 pi`-periodic in `z`.
pub fn d_kernel(z: f64, t: f64) -> Result<f64> {
    check_unit_interval(t)?;
    Ok(d_unchecked(z, t))
}

fn d_unchecked(z: f64, t: f64) -> f64 {
    let q = poisson_denominator(z, t);
    (1.0 + (1.0 - t) * (1.0 + t) / q) / TAU
}

/// `d^2 D / dz^2`.
///
/// From `D = (1 + (1 - t^2) / Q) / (2 pi)` with `Q' = 2t sin z`,
/// `Q'' = 2t cos z`:
/// `D'' = (1 - t^2) (8 t^2 sin^2 z - 2t cos z Q) / (2 pi Q^3)`.
pub fn d_kernel_zz(z: f64, t: f64) -> Result<f64> {
    check_unit_interval(t)?;
    Ok(d_zz_unchecked(z, t))
}

fn d_zz_unchecked(z: f64, t: f64) -> f64 {
    let q = poisson_denominator(z, t);
    let (s, c) = z.sin_cos();
    (1.0 - t) * (1.0 + t) * (8.0 * t * t * s * s - 2.0 * t * c * q) / (TAU * q * q * q)
}

/// `K(x, y, t) = D(x - y, t) - D(x + y, t)`.
pub fn k_kernel(p: &WellKernelPoint) -> Result<f64> {
    p.validate()?;
    Ok(d_unchecked(p.x - p.y, p.t) - d_unchecked(p.x + p.y, p.t))
}

/// `(2/pi) sum_{n=1}^{n_max} t^n sin(nx) sin(ny)`.
pub fn k_series(p: &WellKernelPoint, n_max: u32) -> Result<f64> {
    weighted_series(p, n_max, FRAC_2_PI, |_| 1.0)
}

/// `-1/2 d^2K/dy^2`, equal to `(1/pi) sum n^2 t^n sin(nx) sin(ny)`.
pub fn h_kernel(p: &WellKernelPoint) -> Result<f64> {
    p.validate()?;
    Ok(-0.5 * (d_zz_unchecked(p.x - p.y, p.t) - d_zz_unchecked(p.x + p.y, p.t)))
}

/// `(1/pi) sum_{n=1}^{n_max} n^2 t^n sin(nx) sin(ny)`.
pub fn h_series(p: &WellKernelPoint, n_max: u32) -> Result<f64> {
    weighted_series(p, n_max, 1.0 / PI, |n| n * n)
}

fn weighted_series(
    p: &WellKernelPoint,
    n_max: u32,
    scale: f64,
    weight: impl Fn(f64) -> f64,
) -> Result<f64> {
    p.validate()?;
    if n_max == 0 {
        return Err(Error::DomainError("series needs n_max >= 1".into()));
    }
    let mut sum = 0.0;
    let mut power = 1.0;
    for n in 1..=n_max {
        power *= p.t;
        let nf = f64::from(n);
        sum += weight(nf) * power * (nf * p.x).sin() * (nf * p.y).sin();
    }
    Ok(scale * sum)
}

/// Bound on `|K - k_series(n_max)|`: `(2/pi) t^(n_max+1) / (1 - t)`.
pub fn k_series_tail_bound(t: f64, n_max: u32) -> f64 {
    FRAC_2_PI * t.powi(n_max as i32 + 1) / (1.0 - t)
}

/// Bound on `|H - h_series(n_max)|` from the majorant `(1/pi) n^2 t^n`.
pub fn h_series_tail_bound(t: f64, n_max: u32) -> f64 {
    growth_tail_bound(
        GrowthHint {
            constant: 1.0 / PI,
            exponent: 2.0,
        },
        u64::from(n_max),
        t,
    )
}

/// Principal argument of `f(u) = 1 - t e^{iu}`.
///
/// Because `Re f = 1 - t cos u > 0` for `t < 1`, the two-argument arctangent
/// is continuous in `u` and never needs branch bookkeeping.
pub fn arg_f(u: f64, t: f64) -> Result<f64> {
    check_unit_interval(t)?;
    if !(u > -PI && u < PI) {
        return Err(Error::DomainError(format!("u = {u} is outside (-pi, pi)")));
    }
    Ok(arg_f_unchecked(u, t))
}

fn arg_f_unchecked(u: f64, t: f64) -> f64 {
    let (s, c) = u.sin_cos();
    (-t * s).atan2(1.0 - t * c)
}

/// `lim_{t -> 1-} arg f(u)` on `(-pi, pi)`.
pub fn arg_f_limit(u: f64) -> f64 {
    if u > 0.0 {
        0.5 * (u - PI)
    } else if u < 0.0 {
        0.5 * (u + PI)
    } else {
        0.0
    }
}

/// Interval query `int_a^b K(x, y, t) dy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalIntegralQuery {
    pub x: f64,
    pub a: f64,
    pub b: f64,
    pub t: f64,
}

impl IntervalIntegralQuery {
    pub fn new(x: f64, a: f64, b: f64, t: f64) -> Result<Self> {
        let q = Self { x, a, b, t };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x > 0.0 && self.x < PI) {
            return Err(Error::DomainError(format!(
                "x = {} is outside (0, pi)",
                self.x
            )));
        }
        if !(0.0 <= self.a && self.a < self.b && self.b <= PI) {
            return Err(Error::DomainError(format!(
                "interval [{}, {}] must satisfy 0 <= a < b <= pi",
                self.a, self.b
            )));
        }
        check_unit_interval(self.t)?;
        if self.x == self.a || self.x == self.b {
            return Err(Error::BoundaryAmbiguous { x: self.x });
        }
        Ok(())
    }

    /// The `t -> 1-` value: 1 when `a < x < b`, otherwise 0.
    pub fn limit(&self) -> f64 {
        if self.a < self.x && self.x < self.b {
            1.0
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalIntegral {
    pub value: f64,
    /// Some argument reduced to exactly `pi`, where the periodic extension
    /// of `arg f` was used.
    pub hit_branch_point: bool,
}

/// Reduces `u` into `(-pi, pi]`; the flag reports `u == pi` after reduction.
fn wrap_angle(u: f64) -> (f64, bool) {
    let mut v = u;
    while v > PI {
        v -= TAU;
    }
    while v <= -PI {
        v += TAU;
    }
    (v, v == PI)
}

/// Exact `int_a^b K(x, y, t) dy` for `t < 1`:
///
/// ```text
/// (1/pi) [arg f(x+b) + arg f(x-b) + arg f(a-x) + arg f(-x-a)]
/// ```
///
/// which follows from integrating the sine series term by term and
/// `sum t^n sin(nu) / n = -arg f(u)`.
pub fn k_interval_integral(q: &IntervalIntegralQuery) -> Result<IntervalIntegral> {
    q.validate()?;
    let mut hit_branch_point = false;
    let mut total = 0.0;
    for u in [q.x + q.b, q.x - q.b, q.a - q.x, -q.x - q.a] {
        let (v, at_pi) = wrap_angle(u);
        hit_branch_point |= at_pi;
        total += arg_f_unchecked(v, q.t);
    }
    Ok(IntervalIntegral {
        value: total / PI,
        hit_branch_point,
    })
}

/// Same integral by composite quadrature of [`k_kernel`].
pub fn k_interval_quadrature(q: &IntervalIntegralQuery, quad: &QuadratureSpec) -> Result<f64> {
    q.validate()?;
    let width = (1.0 - q.t).max(1e-300) / 4.0;
    let center = q.x.clamp(q.a, q.b);
    let edges = graded_edges(q.a, q.b, center, width, WELL_MAX_PANEL);
    let t = q.t;
    let x = q.x;
    integrate(
        |y| d_unchecked(x - y, t) - d_unchecked(x + y, t),
        &edges,
        quad,
    )
    .map(|r| r.value)
}

/// `int_0^pi K(x, y, t) g(y) dy` (identity) or `int_0^pi H(x, y, t) g(y) dy`
/// (Hamiltonian). As `t -> 1-` these tend to `g(x)` and `-g''(x)/2`.
pub fn well_action<G: Fn(f64) -> f64>(
    x: f64,
    t: f64,
    g: G,
    quad: &QuadratureSpec,
    operator: Operator,
) -> Result<f64> {
    check_unit_interval(t)?;
    if !(x > 0.0 && x < PI) {
        return Err(Error::DomainError(format!("x = {x} is outside (0, pi)")));
    }
    let boundary = g(0.0).abs() + g(PI).abs();
    if !(boundary <= BOUNDARY_TOLERANCE) {
        return Err(Error::TestFunctionBoundary { boundary });
    }
    let edges = graded_edges(0.0, PI, x, (1.0 - t) / 4.0, WELL_MAX_PANEL);
    let r = match operator {
        Operator::Identity => integrate(
            |y| (d_unchecked(x - y, t) - d_unchecked(x + y, t)) * g(y),
            &edges,
            quad,
        )?,
        Operator::Hamiltonian => integrate(
            |y| -0.5 * (d_zz_unchecked(x - y, t) - d_zz_unchecked(x + y, t)) * g(y),
            &edges,
            quad,
        )?,
    };
    Ok(r.value)
}
