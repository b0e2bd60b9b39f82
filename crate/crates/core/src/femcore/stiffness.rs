//! Fractional stiffness matrix for continuous P1 elements on a uniform 1D
//! mesh.
//!
//! For hats `phi_i`, `phi_j` with `l = |i - j|` the entry is translation
//! invariant and, after the substitution `y = x - r`,
//!
//! ```text
//! K_l = C(1,s) h^(1-2s) int_0^inf r^(-1-2s) (2B(l) - B(l+r) - B(l-r)) dr
//! ```
//!
//! where `B` is the autocorrelation of the unit hat (the centred cubic
//! B-spline). `B` is a cubic on every unit interval, so each piece of the
//! integral is a combination of `int r^(k-1-2s) dr`, evaluated in closed
//! form. For `s = 1/2` the `k = 1` moment is a logarithm. Far from the
//! diagonal the integrand is smooth and Gauss-Legendre is exact to rounding,
//! which avoids the cancellation of the closed form at large `l`.

use super::linalg::SymMatrix;
use super::mesh::UniformMesh1D;
use super::normalization_constant;
use super::quadrature::GaussLegendre;
use crate::error::{Error, Result};

/// Interaction distances up to this one use the closed-form antiderivatives.
const CLOSED_FORM_MAX_OFFSET: usize = 5;

/// Dense symmetric Toeplitz stiffness matrix `K_ij = <phi_i, phi_j>_s`.
#[derive(Debug, Clone)]
pub struct StiffnessMatrix {
    s: f64,
    first_row: Vec<f64>,
    dense: SymMatrix,
}

impl StiffnessMatrix {
    pub fn order(&self) -> f64 {
        self.s
    }

    /// `K_{0,l}` for `l = 0..dim`.
    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.dense
    }

    pub fn dim(&self) -> usize {
        self.dense.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dense.get(i, j)
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        self.dense.matvec(x)
    }
}

/// Assembles the stiffness matrix of order `s` on `mesh`.
pub fn assemble_stiffness(mesh: &UniformMesh1D, s: f64) -> Result<StiffnessMatrix> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("fractional order s = {s} outside (0, 1)")));
    }
    let n = mesh.dofs();
    if n == 0 {
        return Err(Error::Config("mesh needs at least two subintervals".into()));
    }
    let scale = normalization_constant(1, s)? * mesh.h().powf(1.0 - 2.0 * s);
    let first_row: Vec<f64> = (0..n).map(|l| scale * reference_entry(l, s)).collect();
    let dense = SymMatrix::toeplitz(&first_row);
    Ok(StiffnessMatrix { s, first_row, dense })
}

/// `int_0^inf r^(-1-2s) (2B(l) - B(l+r) - B(l-r)) dr` for unit mesh size.
pub(crate) fn reference_entry(l: usize, s: f64) -> f64 {
    if l > CLOSED_FORM_MAX_OFFSET {
        far_field_entry(l, s)
    } else {
        closed_form_entry(l, s)
    }
}

/// Cubic piece of the hat autocorrelation on `[q, q+1]`, as coefficients in t.
fn spline_piece(q: i64) -> [f64; 4] {
    match q {
        -2 => [8.0 / 6.0, 2.0, 1.0, 1.0 / 6.0],
        -1 => [2.0 / 3.0, 0.0, -1.0, -0.5],
        0 => [2.0 / 3.0, 0.0, -1.0, 0.5],
        1 => [8.0 / 6.0, -2.0, 1.0, -1.0 / 6.0],
        _ => [0.0; 4],
    }
}

fn spline(t: f64) -> f64 {
    let a = t.abs();
    if a <= 1.0 {
        2.0 / 3.0 - a * a + 0.5 * a * a * a
    } else if a <= 2.0 {
        (2.0 - a).powi(3) / 6.0
    } else {
        0.0
    }
}

/// Coefficients in r of `c(shift + sign * r)` for the cubic `c`.
fn compose(c: [f64; 4], shift: f64, sign: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    // (shift + sign r)^k = sum_i binom(k, i) shift^(k-i) sign^i r^i
    const BINOM: [[f64; 4]; 4] = [
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0],
        [1.0, 3.0, 3.0, 1.0],
    ];
    for (k, ck) in c.iter().enumerate() {
        for i in 0..=k {
            out[i] += ck * BINOM[k][i] * shift.powi((k - i) as i32) * sign.powi(i as i32);
        }
    }
    out
}

/// `int_p^q r^(k-1-2s) dr`.
fn moment(k: usize, s: f64, p: f64, q: f64) -> f64 {
    let e = k as f64 - 2.0 * s;
    if k == 1 && s == 0.5 {
        (q / p).ln()
    } else {
        (q.powf(e) - p.powf(e)) / e
    }
}

fn closed_form_entry(l: usize, s: f64) -> f64 {
    let lf = l as f64;
    let b_l = spline(lf);
    let mut total = 0.0;
    for p in 0..=(l + 1) {
        let pf = p as f64;
        // on r in [p, p+1]: l + r in [l+p, l+p+1], l - r in [l-p-1, l-p]
        let plus = compose(spline_piece((l + p) as i64), lf, 1.0);
        let minus = compose(spline_piece(l as i64 - p as i64 - 1), lf, -1.0);
        let mut numer = [0.0; 4];
        for k in 0..4 {
            numer[k] = -plus[k] - minus[k];
        }
        numer[0] += 2.0 * b_l;
        // near r = 0 the second difference is O(r^2); the constant and
        // linear coefficients vanish identically there
        let first = if p == 0 { 2 } else { 0 };
        for (k, ck) in numer.iter().enumerate().skip(first) {
            total += ck * moment(k, s, pf, pf + 1.0);
        }
    }
    // beyond r = l + 2 only the constant 2B(l) survives
    total + 2.0 * b_l * (lf + 2.0).powf(-2.0 * s) / (2.0 * s)
}

fn far_field_entry(l: usize, s: f64) -> f64 {
    // -int_{-2}^{2} B(t) (l - t)^(-1-2s) dt
    let rule = GaussLegendre::new(10);
    let lf = l as f64;
    let mut total = 0.0;
    for q in -2..2 {
        let c = spline_piece(q);
        total += rule.integrate(q as f64, q as f64 + 1.0, |t| {
            let b = c[0] + t * (c[1] + t * (c[2] + t * c[3]));
            b * (lf - t).powf(-1.0 - 2.0 * s)
        });
    }
    -total
}
