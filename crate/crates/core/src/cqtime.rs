//! Convolution quadrature for `K(z) = z^alpha` with the backward-Euler
//! generating function `delta(xi) = 1 - xi`.
//!
//! The weights are the power-series coefficients of `((1 - xi) / tau)^alpha`,
//! generated by the recursion `w_0 = tau^-alpha`, `w_j = (1 - (alpha + 1)/j) w_{j-1}`.

use crate::error::{Error, Result};

/// Uniform partition of `[0, T]` with `T = n_steps * tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformTimeGrid {
    pub tau: f64,
    pub n_steps: usize,
}

impl UniformTimeGrid {
    pub fn new(tau: f64, n_steps: usize) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::Config(format!("time step tau = {tau} must be positive")));
        }
        if n_steps == 0 {
            return Err(Error::Config("at least one time step is required".into()));
        }
        Ok(Self { tau, n_steps })
    }

    /// Grid with step `tau` reaching `t_end`; `t_end / tau` must be an integer
    /// up to rounding.
    pub fn from_t_end(tau: f64, t_end: f64) -> Result<Self> {
        let n = t_end / tau;
        let rounded = n.round();
        if !(rounded >= 1.0) || (n - rounded).abs() > 1e-8 * rounded {
            return Err(Error::Config(format!(
                "t_end = {t_end} is not a positive multiple of tau = {tau}"
            )));
        }
        Self::new(tau, rounded as usize)
    }

    pub fn t_end(&self) -> f64 {
        self.n_steps as f64 * self.tau
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.tau
    }
}

/// Immutable table of CQ weights `w_0..w_N` for one `(alpha, tau, N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CQWeightTable {
    alpha: f64,
    tau: f64,
    weights: Vec<f64>,
}

impl CQWeightTable {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Largest index `N` held by the table.
    pub fn max_index(&self) -> usize {
        self.weights.len() - 1
    }

    /// `sum_{j=0}^{n} w_j`.
    pub fn partial_sum(&self, n: usize) -> f64 {
        self.weights[..=n].iter().sum()
    }
}

/// Builds the weight table `w_0..w_n` by the O(n) recursion.
pub fn cq_weights(alpha: f64, tau: f64, n: usize) -> Result<CQWeightTable> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::UnsupportedParameter(format!(
            "CQ order alpha = {alpha} outside (0, 2]"
        )));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::UnsupportedParameter(format!("time step tau = {tau}")));
    }
    let mut weights = Vec::with_capacity(n + 1);
    weights.push(tau.powf(-alpha));
    for j in 1..=n {
        let prev = weights[j - 1];
        weights.push(prev * (1.0 - (alpha + 1.0) / j as f64));
    }
    Ok(CQWeightTable { alpha, tau, weights })
}

/// Discrete Riemann-Liouville derivative `sum_j w_j g(t_n - j tau)`.
///
/// `samples[j]` holds `g(t_n - j tau)`, so `samples.len() == n + 1`.
pub fn discrete_rl(w: &CQWeightTable, samples: &[f64]) -> Result<f64> {
    if samples.is_empty() || samples.len() > w.weights.len() {
        return Err(Error::LengthMismatch {
            expected: w.weights.len(),
            got: samples.len(),
        });
    }
    Ok(w.weights.iter().zip(samples).map(|(a, b)| a * b).sum())
}

/// Discrete RL derivative of `t -> t` at `t_n`: `sum_{j<=n} w_j tau (n - j)`.
pub fn ramp_term(w: &CQWeightTable, n: usize) -> f64 {
    w.weights[..=n]
        .iter()
        .enumerate()
        .map(|(j, wj)| wj * w.tau * (n - j) as f64)
        .sum()
}

/// Corrected source `G^n = (F(t_n) - F(t_{n-1})) / tau`, the average of `f`
/// over `(t_{n-1}, t_n]`, where `f_integral(t)` returns `int_0^t f`.
pub fn corrected_source<F>(f_integral: F, tau: f64, n: usize) -> Vec<f64>
where
    F: Fn(f64) -> Vec<f64>,
{
    match try_corrected_source(|t| Ok(f_integral(t)), tau, n) {
        Ok(g) => g,
        Err(e) => unreachable!("infallible antiderivative failed: {e}"),
    }
}

/// [`corrected_source`] for a fallible antiderivative.
pub fn try_corrected_source<F>(f_integral: F, tau: f64, n: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<Vec<f64>>,
{
    if n == 0 {
        return Err(Error::Domain("corrected source is defined for n >= 1".into()));
    }
    let hi = f_integral(n as f64 * tau)?;
    let lo = f_integral((n - 1) as f64 * tau)?;
    if hi.len() != lo.len() {
        return Err(Error::LengthMismatch { expected: hi.len(), got: lo.len() });
    }
    Ok(hi.iter().zip(&lo).map(|(a, b)| (a - b) / tau).collect())
}
