//! Riemann zeta at real `s`: direct summation for `s > 1`, and Euler
//! summation of the alternating (Dirichlet eta) form for every `s != 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resummation::{euler_limit, CoefficientSequence, EulerLimitConfig, EulerLimitResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZetaMethod {
    Direct,
    EulerAlternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaQuery {
    pub s: f64,
    pub method: ZetaMethod,
}

impl ZetaQuery {
    pub fn validate(&self) -> Result<()> {
        if !self.s.is_finite() {
            return Err(Error::DomainError(format!("s = {} is not finite", self.s)));
        }
        match self.method {
            ZetaMethod::Direct if self.s <= 1.0 => Err(Error::DomainError(format!(
                "direct summation needs s > 1, got {}",
                self.s
            ))),
            ZetaMethod::EulerAlternating if eta_prefactor_denominator(self.s) == 0.0 => Err(
                Error::DomainError(format!("1 - 2^(1 - s) vanishes at s = {}", self.s)),
            ),
            _ => Ok(()),
        }
    }
}

fn eta_prefactor_denominator(s: f64) -> f64 {
    1.0 - (1.0 - s).exp2()
}

/// `B_2, B_4, ..., B_16`.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Euler-Maclaurin correction terms used after the partial sum.
const EM_TERMS: usize = 6;

/// Euler-Maclaurin estimate of `sum_{n >= cut} n^-s` and the magnitude of
/// the first omitted correction, which bounds the remainder because every
/// derivative of `x^-s` is monotone with alternating sign.
fn em_tail(s: f64, cut: f64) -> (f64, f64) {
    let mut tail = cut.powf(1.0 - s) / (s - 1.0) + 0.5 * cut.powf(-s);
    // rising factorial s (s+1) ... (s+2j-2) and (2j)!
    let mut rising = s;
    let mut factorial = 2.0;
    let mut power = cut.powf(-s - 1.0);
    let mut bound = 0.0;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / factorial * rising * power;
        if j == EM_TERMS {
            bound = term.abs();
            break;
        }
        tail += term;
        let jf = (2 * j + 2) as f64;
        rising *= (s + jf - 1.0) * (s + jf);
        factorial *= (jf + 1.0) * (jf + 2.0);
        power /= cut * cut;
    }
    (tail, bound)
}

/// `sum_{n >= 1} n^-s` for `s > 1`, with remainder at most `tol`.
pub fn zeta_direct(s: f64, tol: f64) -> Result<f64> {
    ZetaQuery {
        s,
        method: ZetaMethod::Direct,
    }
    .validate()?;
    if !(tol > 0.0) {
        return Err(Error::DomainError(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut cut: u64 = 8;
    loop {
        let (tail, bound) = em_tail(s, cut as f64);
        if bound <= tol || cut >= 1 << 24 {
            // small terms first
            let head: f64 = (1..cut).rev().map(|n| (n as f64).powf(-s)).sum();
            return Ok(head + tail);
        }
        cut *= 2;
    }
}

/// `(-1)^(n+1) n^-s / (1 - 2^(1-s))` for `n >= 1`.
pub fn eta_sequence(s: f64) -> Result<CoefficientSequence> {
    ZetaQuery {
        s,
        method: ZetaMethod::EulerAlternating,
    }
    .validate()?;
    let scale = 1.0 / eta_prefactor_denominator(s);
    let seq = CoefficientSequence::new(1, move |n| {
        let v = scale * (n as f64).powf(-s);
        if n % 2 == 1 {
            v
        } else {
            -v
        }
    })
    .with_growth_hint(scale.abs(), -s);
    Ok(seq)
}

/// Euler sum of the alternating representation of `zeta(s)`.
pub fn zeta_euler(s: f64, cfg: &EulerLimitConfig) -> Result<EulerLimitResult> {
    euler_limit(&eta_sequence(s)?, cfg)
}

/// Closed-form `zeta(-n) = (-1)^n B_(n+1) / (n+1)` for `0 <= n <= 14`.
pub fn zeta_at_nonpositive_integer(n: u32) -> Option<f64> {
    if n == 0 {
        return Some(-0.5);
    }
    if n > 14 {
        return None;
    }
    if n % 2 == 0 {
        return Some(0.0);
    }
    let b = BERNOULLI_EVEN[(n as usize - 1) / 2];
    Some(-b / (n as f64 + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Partial sum to `cut` plus the midpoint of the integral bracket
    /// `int_{cut+1}^inf <= tail <= int_cut^inf`; error <= half the bracket.
    fn bracket_oracle(s: f64, cut: u64) -> (f64, f64) {
        let head: f64 = (1..=cut).rev().map(|n| (n as f64).powf(-s)).sum();
        let upper = (cut as f64).powf(1.0 - s) / (s - 1.0);
        let lower = (cut as f64 + 1.0).powf(1.0 - s) / (s - 1.0);
        (head + 0.5 * (upper + lower), 0.5 * (upper - lower))
    }

    #[test]
    fn bracket_oracle_brackets_known_values() {
        let (v, err) = bracket_oracle(2.0, 1_000_000);
        assert!((v - PI * PI / 6.0).abs() <= err);
        let (v, err) = bracket_oracle(4.0, 20_000);
        assert!((v - PI.powi(4) / 90.0).abs() <= err + 1e-15);
    }

    #[test]
    fn direct_matches_oracle() {
        for &s in &[1.5, 2.0, 3.0, 4.0, 7.5] {
            let (oracle, err) = bracket_oracle(s, 2_000_000);
            let v = zeta_direct(s, 1e-12).unwrap();
            assert!(
                (v - oracle).abs() <= err + 1e-12,
                "s = {s}: {v} vs {oracle} ± {err}"
            );
        }
        assert!((zeta_direct(2.0, 1e-12).unwrap() - PI * PI / 6.0).abs() < 1e-12);
        assert!((zeta_direct(4.0, 1e-12).unwrap() - PI.powi(4) / 90.0).abs() < 1e-12);
    }

    #[test]
    fn direct_rejects_s_at_most_one() {
        assert!(matches!(zeta_direct(1.0, 1e-8), Err(Error::DomainError(_))));
        assert!(matches!(zeta_direct(0.5, 1e-8), Err(Error::DomainError(_))));
    }

    #[test]
    fn euler_showcase_values() {
        let cfg = EulerLimitConfig::default();
        let z0 = zeta_euler(0.0, &cfg).unwrap();
        assert!(z0.converged);
        assert!((z0.value + 0.5).abs() < 1e-8);
        let zm1 = zeta_euler(-1.0, &cfg).unwrap();
        assert!(zm1.converged);
        assert!((zm1.value + 1.0 / 12.0).abs() < 1e-8);
    }

    #[test]
    fn euler_agrees_with_direct_for_convergent_s() {
        let cfg = EulerLimitConfig::default();
        for &s in &[1.5, 2.0, 3.0] {
            let e = zeta_euler(s, &cfg).unwrap();
            let d = zeta_direct(s, 1e-12).unwrap();
            assert!(
                (e.value - d).abs() <= 10.0 * cfg.tolerance,
                "s = {s}: {} vs {d}",
                e.value
            );
        }
    }

    #[test]
    fn euler_at_minus_two_is_trivial_zero() {
        let r = zeta_euler(-2.0, &EulerLimitConfig::default()).unwrap();
        assert!(r.converged);
        assert!(r.value.abs() < 1e-7, "{}", r.value);
    }

    #[test]
    fn euler_rejects_pole() {
        assert!(matches!(
            zeta_euler(1.0, &EulerLimitConfig::default()),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn steep_negative_s_does_not_claim_convergence() {
        match zeta_euler(-5.0, &EulerLimitConfig::default()) {
            Ok(r) => assert!(!r.converged),
            Err(e) => assert_eq!(e.name(), "NoEulerSum"),
        }
    }

    #[test]
    fn prefactor_identity_for_convergent_s() {
        // (1 - 2^(1-s)) zeta(s) = sum (-1)^(n+1) n^-s, summed directly
        for &s in &[2.0f64, 3.0, 5.5] {
            let n_max = 2_000_000u64;
            let mut alt = 0.0;
            for n in (1..=n_max).rev() {
                let v = (n as f64).powf(-s);
                alt += if n % 2 == 1 { v } else { -v };
            }
            // alternating tail bounded by the first omitted term
            let tol = ((n_max + 1) as f64).powf(-s);
            let lhs = (1.0 - (1.0 - s).exp2()) * zeta_direct(s, 1e-13).unwrap();
            assert!((lhs - alt).abs() <= tol + 1e-13, "s = {s}");
        }
    }

    #[test]
    fn nonpositive_integer_table() {
        assert_eq!(zeta_at_nonpositive_integer(0), Some(-0.5));
        assert!((zeta_at_nonpositive_integer(1).unwrap() + 1.0 / 12.0).abs() < 1e-16);
        assert!((zeta_at_nonpositive_integer(3).unwrap() - 1.0 / 120.0).abs() < 1e-16);
        assert!((zeta_at_nonpositive_integer(5).unwrap() + 1.0 / 252.0).abs() < 1e-16);
        assert_eq!(zeta_at_nonpositive_integer(4), Some(0.0));
        assert_eq!(zeta_at_nonpositive_integer(15), None);
    }
}
