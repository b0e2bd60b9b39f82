//! Gauss-Legendre rules and the graded composite rule used near the
//! endpoints of the domain.

use std::f64::consts::PI;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule, exact for polynomials of degree `2n - 1`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Newton on P_n from the Chebyshev-like initial guess
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_and_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_and_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
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

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
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

/// Composite rule on `[a, b]` refined geometrically (ratio 1/2) toward the
/// endpoint `a` when `toward_left`, otherwise toward `b`.
pub fn graded_points(
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    toward_left: bool,
    depth: usize,
) -> Vec<(f64, f64)> {
    let len = b - a;
    let mut out = Vec::with_capacity(rule.len() * (depth + 1));
    let mut outer = 1.0;
    for _ in 0..depth {
        let inner = 0.5 * outer;
        push_cell(rule, a, len, inner, outer, toward_left, &mut out);
        outer = inner;
    }
    push_cell(rule, a, len, 0.0, outer, toward_left, &mut out);
    out
}

fn push_cell(
    rule: &GaussLegendre,
    a: f64,
    len: f64,
    lo: f64,
    hi: f64,
    toward_left: bool,
    out: &mut Vec<(f64, f64)>,
) {
    // [lo, hi] is a fraction of the element measured from the graded end
    let (x0, x1) = if toward_left {
        (a + lo * len, a + hi * len)
    } else {
        (a + (1.0 - hi) * len, a + (1.0 - lo) * len)
    };
    out.extend(rule.mapped(x0, x1));
}
