//! Composite Gauss-Legendre quadrature on caller-supplied panels.
//!
//! Every distributional action in the crate reduces to a one-dimensional
//! integral of a kernel that sharpens into a spike of width `w` as the
//! regulator approaches one. [`graded_edges`] builds a mesh whose panels are
//! narrower than `w / 4` next to the spike and grow geometrically away from
//! it; [`integrate`] then bisects every panel until two successive composite
//! sums agree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node count, refinement budget and tolerance for every quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub nodes_per_panel: usize,
    pub max_refinements: usize,
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes_per_panel: 64,
            max_refinements: 12,
            tolerance: 1e-9,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_panel < 2 {
            return Err(Error::InvalidConfig(format!(
                "nodes_per_panel must be at least 2, got {}",
                self.nodes_per_panel
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "quadrature tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule to a single panel `[a, b]`.
    pub fn panel<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive composite integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// Absolute difference between the last two refinements.
    pub change: f64,
    pub panels: usize,
}

/// Integrates `f` over the panels delimited by `edges`, bisecting every panel
/// until two successive composite sums differ by at most
/// `tolerance * max(1, |value|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    edges: &[f64],
    spec: &QuadratureSpec,
) -> Result<Integral> {
    spec.validate()?;
    if edges.len() < 2 {
        return Err(Error::DomainError(
            "quadrature needs at least one panel".into(),
        ));
    }
    let rule = GaussLegendre::new(spec.nodes_per_panel);
    let mut edges = edges.to_vec();
    let mut previous = composite(&rule, &f, &edges);
    let mut change = f64::INFINITY;
    for _ in 0..spec.max_refinements {
        edges = bisect(&edges);
        let current = composite(&rule, &f, &edges);
        change = (current - previous).abs();
        if change <= spec.tolerance * current.abs().max(1.0) {
            return Ok(Integral {
                value: current,
                change,
                panels: edges.len() - 1,
            });
        }
        previous = current;
    }
    Err(Error::QuadratureNotConverged {
        refinements: spec.max_refinements,
        last_change: change,
    })
}

fn composite<F: Fn(f64) -> f64>(rule: &GaussLegendre, f: &F, edges: &[f64]) -> f64 {
    edges.windows(2).map(|w| rule.panel(f, w[0], w[1])).sum()
}

fn bisect(edges: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * edges.len() - 1);
    for w in edges.windows(2) {
        out.push(w[0]);
        out.push(0.5 * (w[0] + w[1]));
    }
    out.push(*edges.last().unwrap());
    out
}

/// Panel edges on `[a, b]` graded around `center`.
///
/// The two panels touching `center` have width at most `min_width`; widths
/// double moving outward until they reach `max_width`, after which the mesh
/// is uniform. `center` is always an edge when it lies strictly inside.
pub fn graded_edges(a: f64, b: f64, center: f64, min_width: f64, max_width: f64) -> Vec<f64> {
    assert!(a < b, "graded_edges needs a < b");
    let min_width = min_width
        .min(max_width)
        .max(f64::EPSILON * (b - a).max(1.0));
    let c = center.clamp(a, b);
    let mut left = graded_side(c - a, min_width, max_width);
    let right = graded_side(b - c, min_width, max_width);
    let mut edges = Vec::with_capacity(left.len() + right.len() + 1);
    left.reverse();
    edges.extend(left.iter().map(|d| c - d));
    edges.push(c);
    edges.extend(right.iter().map(|d| c + d));
    edges[0] = a;
    *edges.last_mut().unwrap() = b;
    edges.dedup();
    edges
}

/// Distances from the center, increasing, ending exactly at `length`.
fn graded_side(length: f64, min_width: f64, max_width: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if length <= 0.0 {
        return out;
    }
    let mut pos = 0.0;
    let mut width = min_width;
    while pos + width < length {
        pos += width;
        out.push(pos);
        width = (2.0 * width).min(max_width);
    }
    // merge a sliver final panel into its neighbour
    if let Some(&last) = out.last() {
        if length - last < 0.25 * width && out.len() > 1 {
            out.pop();
        }
    }
    out.push(length);
    out
}
