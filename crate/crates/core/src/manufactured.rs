//! Closed-form solutions `u(x,t) = h(t) w_s(x) g_k(x)` on `(-1, 1)`, with
//! `w_s(x) = (1 - x^2)_+^s` and `g_k = C_k^(s+1/2)`, for which
//! `(-Delta)^s (w_s g_k) = mu_s^k g_k`.
//!
//! Two time profiles are provided: `h(t) = E_{alpha,1}(-t^alpha)` (case a),
//! whose Caputo derivative is `-h`, and `h(t) = sin t` (case b).
//!
//! Every data field is a short sum of products `time(t) * space(x)`, which
//! lets the solver project each spatial factor once.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::specfun::{caputo_sin, caputo_sin_antiderivative, gamma_fn, gegenbauer, mittag_leffler, MLParams};

/// Absolute truncation tolerance for the Caputo-of-sine series.
const SERIES_TOL: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// `h(t) = E_{alpha,1}(-t^alpha)`
    A,
    /// `h(t) = sin t`
    B,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::A => f.write_str("a"),
            CaseId::B => f.write_str("b"),
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" | "A" => Ok(CaseId::A),
            "b" | "B" => Ok(CaseId::B),
            other => Err(Error::Config(format!("unknown case '{other}' (expected a or b)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeProfile {
    MittagLefflerDecay,
    Sine,
}

/// Time factors appearing in the exact solution and its data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeFactor {
    /// `E_{alpha,1}(-t^alpha)`
    MlDecay,
    /// `t E_{alpha,2}(-t^alpha)`, the antiderivative of `MlDecay`
    MlDecayIntegral,
    Sin,
    /// `1 - cos t`
    OneMinusCos,
    /// Caputo derivative of `sin`
    CaputoSin,
    CaputoSinIntegral,
}

impl TimeFactor {
    pub fn eval(self, alpha: f64, t: f64) -> Result<f64> {
        match self {
            TimeFactor::MlDecay => mittag_leffler(MLParams::new(alpha, 1.0), -t.powf(alpha)),
            TimeFactor::MlDecayIntegral => {
                if t == 0.0 {
                    return Ok(0.0);
                }
                Ok(t * mittag_leffler(MLParams::new(alpha, 2.0), -t.powf(alpha))?)
            }
            TimeFactor::Sin => Ok(t.sin()),
            TimeFactor::OneMinusCos => Ok(2.0 * (0.5 * t).sin().powi(2)),
            TimeFactor::CaputoSin => {
                if t == 0.0 {
                    // the series starts at t^(1-alpha) (alpha < 1) or t^(3-alpha)
                    return Ok(if alpha == 1.0 { 1.0 } else { 0.0 });
                }
                caputo_sin(alpha, t, SERIES_TOL)
            }
            TimeFactor::CaputoSinIntegral => caputo_sin_antiderivative(alpha, t, SERIES_TOL),
        }
    }
}

/// Spatial factors, all multiples of `g_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaceFactor {
    /// `w_s(x) g_k(x)`
    WeightedPolynomial,
    /// `c g_k(x)`
    Polynomial(f64),
    /// `g_k(x) (mu - w_s(x))`
    PolynomialTimesMuMinusWeight(f64),
}

/// `sum_i time_i(t) * space_i(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableField {
    pub terms: Vec<(TimeFactor, SpaceFactor)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManufacturedCase {
    pub id: CaseId,
    pub alpha: f64,
    pub s: f64,
    pub k: usize,
}

/// Default polynomial degree.
pub const DEFAULT_DEGREE: usize = 3;

/// `mu_s^k = Gamma(2s + k + 1) / k!`.
pub fn mu_coefficient(s: f64, k: usize) -> Result<f64> {
    Ok(gamma_fn(2.0 * s + k as f64 + 1.0)? / gamma_fn(k as f64 + 1.0)?)
}

impl ManufacturedCase {
    pub fn new(id: CaseId, alpha: f64, s: f64, k: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::Config(format!("alpha = {alpha} outside (0, 2]")));
        }
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Config(format!("s = {s} outside (0, 1)")));
        }
        Ok(Self { id, alpha, s, k })
    }

    pub fn time_profile(&self) -> TimeProfile {
        match self.id {
            CaseId::A => TimeProfile::MittagLefflerDecay,
            CaseId::B => TimeProfile::Sine,
        }
    }

    pub fn mu(&self) -> f64 {
        // s in (0,1) keeps the Gamma arguments away from the poles
        mu_coefficient(self.s, self.k).expect("mu_s^k defined for s in (0,1)")
    }

    /// `(1 - x^2)_+^s`.
    pub fn weight(&self, x: f64) -> f64 {
        let w = 1.0 - x * x;
        if w <= 0.0 {
            0.0
        } else {
            w.powf(self.s)
        }
    }

    /// `g_k(x) = C_k^(s+1/2)(x)`.
    pub fn polynomial(&self, x: f64) -> f64 {
        gegenbauer(self.k, self.s + 0.5, x)
    }

    /// Steady state `w_s g_k`, satisfying `(-Delta)^s (w_s g_k) = mu g_k`.
    pub fn profile(&self, x: f64) -> f64 {
        self.weight(x) * self.polynomial(x)
    }

    pub fn space(&self, factor: SpaceFactor, x: f64) -> f64 {
        match factor {
            SpaceFactor::WeightedPolynomial => self.profile(x),
            SpaceFactor::Polynomial(c) => c * self.polynomial(x),
            SpaceFactor::PolynomialTimesMuMinusWeight(mu) => self.polynomial(x) * (mu - self.weight(x)),
        }
    }

    pub fn eval_field(&self, field: &SeparableField, x: f64, t: f64) -> Result<f64> {
        let mut v = 0.0;
        for &(tf, sf) in &field.terms {
            v += tf.eval(self.alpha, t)? * self.space(sf, x);
        }
        Ok(v)
    }

    fn time_factor(&self) -> TimeFactor {
        match self.id {
            CaseId::A => TimeFactor::MlDecay,
            CaseId::B => TimeFactor::Sin,
        }
    }

    /// `h(t)`.
    pub fn time_value(&self, t: f64) -> Result<f64> {
        self.time_factor().eval(self.alpha, t)
    }

    pub fn exact_solution(&self, x: f64, t: f64) -> Result<f64> {
        if self.weight(x) == 0.0 {
            return Ok(0.0);
        }
        Ok(self.time_factor().eval(self.alpha, t)? * self.profile(x))
    }

    /// Source term `f = (Caputo d^alpha h) w_s g_k + h mu g_k`.
    pub fn source_field(&self) -> SeparableField {
        let mu = self.mu();
        let terms = match self.id {
            CaseId::A => vec![(TimeFactor::MlDecay, SpaceFactor::PolynomialTimesMuMinusWeight(mu))],
            CaseId::B => vec![
                (TimeFactor::CaputoSin, SpaceFactor::WeightedPolynomial),
                (TimeFactor::Sin, SpaceFactor::Polynomial(mu)),
            ],
        };
        SeparableField { terms }
    }

    /// `int_0^t f(x, r) dr`, termwise in closed form.
    pub fn source_antiderivative_field(&self) -> SeparableField {
        let mu = self.mu();
        let terms = match self.id {
            CaseId::A => vec![(TimeFactor::MlDecayIntegral, SpaceFactor::PolynomialTimesMuMinusWeight(mu))],
            CaseId::B => vec![
                (TimeFactor::CaputoSinIntegral, SpaceFactor::WeightedPolynomial),
                (TimeFactor::OneMinusCos, SpaceFactor::Polynomial(mu)),
            ],
        };
        SeparableField { terms }
    }

    pub fn source_term(&self, x: f64, t: f64) -> Result<f64> {
        self.eval_field(&self.source_field(), x, t)
    }

    pub fn source_antiderivative(&self, x: f64, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Ok(0.0);
        }
        self.eval_field(&self.source_antiderivative_field(), x, t)
    }

    /// Initial value `v = u(., 0)`.
    pub fn initial_value(&self, x: f64) -> f64 {
        match self.id {
            CaseId::A => self.profile(x),
            CaseId::B => 0.0,
        }
    }

    /// Initial velocity `b = du/dt(., 0)`; present only for `alpha > 1`.
    pub fn initial_velocity(&self, x: f64) -> Option<f64> {
        if self.alpha <= 1.0 {
            return None;
        }
        Some(match self.id {
            // d/dt E_{alpha,1}(-t^alpha) = -t^(alpha-1) E_{alpha,alpha}(-t^alpha) -> 0
            CaseId::A => 0.0,
            CaseId::B => self.profile(x),
        })
    }

    /// `(v, b)` as closures.
    pub fn initial_data(&self) -> (impl Fn(f64) -> f64 + '_, Option<impl Fn(f64) -> f64 + '_>) {
        let v = move |x| self.initial_value(x);
        let b = (self.alpha > 1.0).then_some(move |x| self.initial_velocity(x).unwrap_or(0.0));
        (v, b)
    }
}
