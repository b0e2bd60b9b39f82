//! Special functions: Gamma, two-parameter Mittag-Leffler, Gegenbauer and
//! Jacobi polynomials, and Caputo derivatives of the elementary time
//! profiles used by the manufactured solutions.
//!
//! Everything here is a pure function of its arguments.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// `sin(pi * x)` with exact argument reduction.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (x / 2.0).round();
    let mut sign = 1.0;
    if r < 0.0 {
        r = -r;
        sign = -1.0;
    }
    if r > 0.5 {
        r = 1.0 - r;
    }
    sign * (PI * r).sin()
}

fn gamma_lanczos(x: f64) -> f64 {
    // Gamma(x) for x >= 0.5
    let y = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (y + k as f64);
    }
    let t = y + LANCZOS_G + 0.5;
    // split the power so that large arguments do not overflow early
    let half = t.powf(0.5 * (y + 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * acc
}

/// Euler Gamma function.
///
/// Returns an error at the poles `x = 0, -1, -2, ...`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::GammaPole(x));
    }
    if x == x.floor() && x <= 21.0 {
        // exact factorials
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    if x < 0.5 {
        Ok(PI / (sin_pi(x) * gamma_lanczos(1.0 - x)))
    } else {
        Ok(gamma_lanczos(x))
    }
}

/// `1 / Gamma(x)`, continued by zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 171.5 {
        return 0.0;
    }
    if x < 0.5 {
        // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
        return sin_pi(x) * gamma_lanczos(1.0 - x) / PI;
    }
    1.0 / gamma_fn(x).unwrap_or(f64::INFINITY)
}

/// Parameters of the two-parameter Mittag-Leffler function `E_{alpha, mu}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    pub mu: f64,
}

impl MLParams {
    pub fn new(alpha: f64, mu: f64) -> Self {
        Self { alpha, mu }
    }
}

/// Largest positive argument accepted by [`mittag_leffler`].
pub const ML_MAX_ARG: f64 = 10.0;

/// Radius of the negative half-line on which the power series is used.
fn series_radius(alpha: f64) -> f64 {
    if alpha >= 1.0 {
        5.0
    } else {
        1.0
    }
}

/// Two-parameter Mittag-Leffler function `E_{alpha,mu}(z)` for real `z`.
///
/// The power series is summed near the origin. On the negative half-line
/// beyond [`series_radius`] the value is recovered from the inverse Laplace
/// transform of `s^(alpha-mu) / (s^alpha - z)`, integrated along a pair of
/// rays in the left half plane, plus the residues of the poles swept while
/// deforming the Bromwich line onto those rays.
pub fn mittag_leffler(p: MLParams, z: f64) -> Result<f64> {
    let MLParams { alpha, mu } = p;
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::UnsupportedParameter(format!(
            "Mittag-Leffler order alpha = {alpha} outside (0, 2]"
        )));
    }
    if !mu.is_finite() || z.is_nan() {
        return Err(Error::Domain(format!("E_(alpha,mu)(z) with mu = {mu}, z = {z}")));
    }
    if z > ML_MAX_ARG {
        return Err(Error::Domain(format!(
            "Mittag-Leffler argument z = {z} above {ML_MAX_ARG}"
        )));
    }
    if alpha == 1.0 {
        if let Some(v) = ml_alpha_one(mu, z) {
            return Ok(v);
        }
    }
    if z >= -series_radius(alpha) {
        ml_series(alpha, mu, z)
    } else {
        Ok(ml_contour(alpha, mu, -z))
    }
}

/// Closed forms for `alpha = 1` and integer `mu`: `E_{1,1} = exp` and the
/// upward recurrence `E_{1,n+1}(z) = (E_{1,n}(z) - 1/(n-1)!) / z`.
fn ml_alpha_one(mu: f64, z: f64) -> Option<f64> {
    if mu != mu.floor() || !(1.0..=4.0).contains(&mu) {
        return None;
    }
    if mu == 1.0 {
        return Some(z.exp());
    }
    if z.abs() < 1.0 {
        return None;
    }
    if mu == 2.0 {
        return Some(z.exp_m1() / z);
    }
    let mut e = z.exp_m1() / z;
    let mut fact = 1.0;
    let mut n = 2.0;
    while n < mu {
        e = (e - 1.0 / fact) / z;
        fact *= n;
        n += 1.0;
    }
    Some(e)
}

pub(crate) fn ml_series(alpha: f64, mu: f64, z: f64) -> Result<f64> {
    let mut sum = 0.0;
    let mut zk = 1.0;
    let mut k = 0usize;
    loop {
        let arg = alpha * k as f64 + mu;
        let term = zk * rgamma(arg);
        sum += term;
        if k > 2 && arg > 1.0 && term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            return Ok(sum);
        }
        if arg > 171.0 {
            if term.abs() <= 1e-15 * sum.abs().max(1e-300) {
                return Ok(sum);
            }
            return Err(Error::NonConvergence { tol: 1e-17, terms: k });
        }
        zk *= z;
        k += 1;
    }
}

/// `E_{alpha,mu}(-x)` for `x > 0` by contour integration.
pub(crate) fn ml_contour(alpha: f64, mu: f64, x: f64) -> f64 {
    // The integrand behaves like r^(alpha - mu) at the origin; lower mu
    // with E_{a,m}(z) = (E_{a,m-a}(z) - 1/Gamma(m-a)) / z until integrable.
    if mu >= alpha + 1.0 {
        let lower = ml_contour(alpha, mu - alpha, x);
        return (lower - rgamma(mu - alpha)) / (-x);
    }

    let pole_angle = PI / alpha;
    let (phi, with_poles) = if pole_angle >= PI {
        (0.75 * PI, false)
    } else if PI - pole_angle >= pole_angle - FRAC_PI_2 {
        (0.5 * (pole_angle + PI), true)
    } else {
        (0.5 * (FRAC_PI_2 + pole_angle), false)
    };

    let mut value = 0.0;
    if with_poles {
        let s = Complex64::from_polar(x.powf(1.0 / alpha), pole_angle);
        let res = s.powf(1.0 - mu) * s.exp() / alpha;
        value += 2.0 * res.re;
    }

    let dir = Complex64::from_polar(1.0, phi);
    let integrand = |r: f64| -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        let s = dir * r;
        let sa = s.powf(alpha);
        let f = s.exp() * s.powf(alpha - mu) / (sa + x) * dir;
        f.im / PI
    };
    value + exp_sinh(integrand)
}

/// Double-exponential quadrature of a decaying integrand on `[0, inf)`.
fn exp_sinh<F: Fn(f64) -> f64>(f: F) -> f64 {
    let t_lo: f64 = -6.5;
    let t_hi: f64 = 3.2;
    let node = |t: f64| {
        let e = FRAC_PI_2 * t.sinh();
        let r = e.exp();
        let w = FRAC_PI_2 * t.cosh() * r;
        (r, w)
    };
    let eval = |t: f64| {
        let (r, w) = node(t);
        if !r.is_finite() || r == 0.0 {
            0.0
        } else {
            let v = f(r) * w;
            if v.is_finite() { v } else { 0.0 }
        }
    };

    let mut h = 0.25;
    let n = ((t_hi - t_lo) / h).round() as usize;
    let (mut sum, mut abs_sum) = (0.0, 0.0);
    for i in 0..=n {
        let v = eval(t_lo + i as f64 * h);
        sum += v;
        abs_sum += v.abs();
    }
    let mut estimate = sum * h;
    for _ in 0..8 {
        let count = ((t_hi - t_lo) / h).round() as usize;
        let mut add = 0.0;
        let mut add_abs = 0.0;
        for i in 0..count {
            let v = eval(t_lo + (i as f64 + 0.5) * h);
            add += v;
            add_abs += v.abs();
        }
        sum += add;
        abs_sum += add_abs;
        h *= 0.5;
        let next = sum * h;
        let scale = abs_sum * h;
        let done = (next - estimate).abs() <= 1e-15 * scale.max(1e-300);
        estimate = next;
        if done {
            break;
        }
    }
    estimate
}

/// Returns `(E_{2,1}(z), E_{2,2}(z))`. For `z = -t^2` these equal
/// `(cos t, sin t / t)`; for `z = t^2`, `(cosh t, sinh t / t)`.
pub fn ml_cosh_sinh_checks(z: f64) -> Result<(f64, f64)> {
    let c = mittag_leffler(MLParams::new(2.0, 1.0), z)?;
    let s = mittag_leffler(MLParams::new(2.0, 2.0), z)?;
    Ok((c, s))
}

/// Gegenbauer polynomial `C_k^(lambda)(x)` by the three-term recurrence.
pub fn gegenbauer(k: usize, lambda: f64, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * x;
    for n in 1..k {
        let nf = n as f64;
        let next = (2.0 * x * (nf + lambda) * cur - (nf + 2.0 * lambda - 1.0) * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial `P_k^(a,b)(x)` by the three-term recurrence.
pub fn jacobi(k: usize, a: f64, b: f64, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for n in 2..=k {
        let nf = n as f64;
        let c = 2.0 * nf + a + b;
        let a1 = 2.0 * nf * (nf + a + b) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let a3 = 2.0 * (nf + a - 1.0) * (nf + b - 1.0) * c;
        let next = (a2 * cur - a3 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

fn check_caputo_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::UnsupportedParameter(format!(
            "Caputo order alpha = {alpha} outside (0, 2]"
        )));
    }
    Ok(())
}

/// Caputo derivative of order `alpha` of `t -> t^p`, evaluated at `t > 0`.
///
/// Monomials of integer degree below `ceil(alpha)` are annihilated.
pub fn caputo_power(alpha: f64, p: f64, t: f64) -> Result<f64> {
    check_caputo_order(alpha)?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("Caputo derivative at t = {t}")));
    }
    if !(p >= 0.0) {
        return Err(Error::Domain(format!("negative power p = {p}")));
    }
    let order_ceil = alpha.ceil();
    if p == p.floor() {
        if p < order_ceil {
            return Ok(0.0);
        }
    } else if p < order_ceil {
        return Err(Error::Domain(format!(
            "non-integer power p = {p} below ceil(alpha) = {order_ceil}"
        )));
    }
    Ok(gamma_fn(p + 1.0)? * rgamma(p + 1.0 - alpha) * t.powf(p - alpha))
}

const CAPUTO_SIN_MAX_TERMS: usize = 200;

/// Caputo derivative of `sin` at `t`, summed termwise from the Taylor series.
pub fn caputo_sin(alpha: f64, t: f64, tol: f64) -> Result<f64> {
    check_caputo_order(alpha)?;
    if !(t > 0.0) {
        return Err(Error::Domain(format!("Caputo derivative at t = {t}")));
    }
    // (-1)^k t^(2k+1) / (2k+1)!  ->  (-1)^k t^(2k+1-alpha) / Gamma(2k+2-alpha)
    sin_series(alpha, t, tol, |k| {
        let p = (2 * k + 1) as f64;
        if p < alpha.ceil() {
            None
        } else {
            Some(t.powf(p - alpha) * rgamma(p + 1.0 - alpha))
        }
    })
}

/// `int_0^t (Caputo d^alpha sin)(r) dr`, each power integrated exactly.
pub fn caputo_sin_antiderivative(alpha: f64, t: f64, tol: f64) -> Result<f64> {
    check_caputo_order(alpha)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("antiderivative at t = {t}")));
    }
    sin_series(alpha, t, tol, |k| {
        let p = (2 * k + 1) as f64;
        if p < alpha.ceil() {
            None
        } else {
            Some(t.powf(p + 1.0 - alpha) * rgamma(p + 2.0 - alpha))
        }
    })
}

fn sin_series<F: Fn(usize) -> Option<f64>>(alpha: f64, t: f64, tol: f64, magnitude: F) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let mut sum = 0.0;
    for k in 0..CAPUTO_SIN_MAX_TERMS {
        let Some(m) = magnitude(k) else { continue };
        sum += if k % 2 == 0 { m } else { -m };
        // terms decrease once the exponent exceeds t
        let past_peak = (2 * k) as f64 + 2.0 - alpha > t;
        if past_peak && m.abs() < tol {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { tol, terms: CAPUTO_SIN_MAX_TERMS })
}
