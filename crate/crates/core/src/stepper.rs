//! Fully discrete schemes for `Caputo d_t^alpha u + (-Delta)^s u = f` and the
//! exact solution of the semi-discrete problem by eigenmodes.
//!
//! Writing the Caputo derivative as a Riemann-Liouville derivative of
//! `u - v` (diffusion) or `u - v - t b` (diffusion-wave) and discretising the
//! latter by backward-Euler convolution quadrature gives, at every step,
//!
//! ```text
//! (w_0 M + K) U^n = M [ (sum_{j<=n} w_j) U^0 + r_n b - sum_{j=1..n} w_j U^{n-j} + F^n ]
//! ```
//!
//! with `r_n` the discrete RL derivative of `t` (zero in the diffusion case).

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::cqtime::{cq_weights, try_corrected_source, ramp_term, UniformTimeGrid};
use crate::error::{Error, Result};
use crate::femcore::{Cholesky, MassMatrix, StiffnessMatrix, SymMatrix, UniformMesh1D};
use crate::specfun::{mittag_leffler, MLParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub alpha: f64,
    pub s: f64,
    pub grid: UniformTimeGrid,
    pub mesh: UniformMesh1D,
    /// Replace `P_h f(t_n)` by the cell average of `f` over `(t_{n-1}, t_n]`.
    pub use_corrected_source: bool,
}

impl SolverConfig {
    /// Configuration with the corrected source switched on exactly in the
    /// diffusion-wave regime.
    pub fn new(alpha: f64, s: f64, grid: UniformTimeGrid, mesh: UniformMesh1D) -> Result<Self> {
        let cfg = Self {
            alpha,
            s,
            grid,
            mesh,
            use_corrected_source: alpha > 1.0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return Err(Error::Config(format!("alpha = {} outside (0, 2]", self.alpha)));
        }
        if !(self.s > 0.0 && self.s < 1.0) {
            return Err(Error::Config(format!("s = {} outside (0, 1)", self.s)));
        }
        Ok(())
    }
}

/// Source data handed to the schemes.
pub enum Forcing<'a> {
    Zero,
    /// `t -> coefficients of P_h f(t)`
    Pointwise(Box<dyn Fn(f64) -> Result<Vec<f64>> + 'a>),
    /// `t -> coefficients of P_h int_0^t f`; the scheme uses the cell average.
    Averaged(Box<dyn Fn(f64) -> Result<Vec<f64>> + 'a>),
}

impl<'a> Forcing<'a> {
    pub fn pointwise<F: Fn(f64) -> Result<Vec<f64>> + 'a>(f: F) -> Self {
        Forcing::Pointwise(Box::new(f))
    }

    pub fn averaged<F: Fn(f64) -> Result<Vec<f64>> + 'a>(f: F) -> Self {
        Forcing::Averaged(Box::new(f))
    }

    fn at_step(&self, tau: f64, n: usize) -> Result<Option<Vec<f64>>> {
        match self {
            Forcing::Zero => Ok(None),
            Forcing::Pointwise(f) => f(n as f64 * tau).map(Some),
            Forcing::Averaged(f) => try_corrected_source(f, tau, n).map(Some),
        }
    }
}

/// Nodal coefficient vectors `U^0..U^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<Vec<f64>>,
    pub grid: UniformTimeGrid,
}

impl Trajectory {
    pub fn last(&self) -> &[f64] {
        self.states.last().expect("trajectory holds U^0")
    }
}

fn check_dims(k: &StiffnessMatrix, m: &MassMatrix, vectors: &[&[f64]]) -> Result<()> {
    let n = k.dim();
    if m.n != n {
        return Err(Error::LengthMismatch { expected: n, got: m.n });
    }
    for v in vectors {
        if v.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: v.len() });
        }
    }
    Ok(())
}

/// Scheme for `alpha` in `(0, 1]`.
pub fn solve_diffusion(
    cfg: &SolverConfig,
    k: &StiffnessMatrix,
    m: &MassMatrix,
    v_h: &[f64],
    forcing: &Forcing<'_>,
) -> Result<Trajectory> {
    cfg.validate()?;
    if cfg.alpha > 1.0 {
        return Err(Error::Config(format!(
            "diffusion scheme needs alpha <= 1, got {}",
            cfg.alpha
        )));
    }
    check_dims(k, m, &[v_h])?;
    march(cfg, k, m, v_h, None, forcing)
}

/// Scheme for `alpha` in `(1, 2]`. `alpha = 2` runs but lies outside the
/// range covered by the error analysis.
pub fn solve_wave(
    cfg: &SolverConfig,
    k: &StiffnessMatrix,
    m: &MassMatrix,
    v_h: &[f64],
    b_h: &[f64],
    forcing: &Forcing<'_>,
) -> Result<Trajectory> {
    cfg.validate()?;
    if cfg.alpha <= 1.0 {
        return Err(Error::Config(format!(
            "diffusion-wave scheme needs alpha > 1, got {}",
            cfg.alpha
        )));
    }
    check_dims(k, m, &[v_h, b_h])?;
    march(cfg, k, m, v_h, Some(b_h), forcing)
}

fn march(
    cfg: &SolverConfig,
    k: &StiffnessMatrix,
    m: &MassMatrix,
    v_h: &[f64],
    b_h: Option<&[f64]>,
    forcing: &Forcing<'_>,
) -> Result<Trajectory> {
    let dim = v_h.len();
    let steps = cfg.grid.n_steps;
    let tau = cfg.grid.tau;
    let w = cq_weights(cfg.alpha, tau, steps)?;
    let weights = w.weights();

    let mut system: SymMatrix = k.matrix().clone();
    for i in 0..dim {
        system.set(i, i, system.get(i, i) + weights[0] * m.diag);
        if i + 1 < dim {
            let off = system.get(i, i + 1) + weights[0] * m.off;
            system.set(i, i + 1, off);
            system.set(i + 1, i, off);
        }
    }
    let factor = Cholesky::new(&system)?;

    let mut states: Vec<Vec<f64>> = Vec::with_capacity(steps + 1);
    states.push(v_h.to_vec());
    let mut partial = weights[0];
    let mut bracket = vec![0.0; dim];
    for n in 1..=steps {
        partial += weights[n];
        for (i, slot) in bracket.iter_mut().enumerate() {
            *slot = partial * v_h[i];
        }
        if let Some(b) = b_h {
            let r = ramp_term(&w, n);
            for (slot, bi) in bracket.iter_mut().zip(b) {
                *slot += r * bi;
            }
        }
        for j in 1..=n {
            let wj = weights[j];
            for (slot, u) in bracket.iter_mut().zip(&states[n - j]) {
                *slot -= wj * u;
            }
        }
        if let Some(f) = forcing.at_step(tau, n)? {
            if f.len() != dim {
                return Err(Error::LengthMismatch { expected: dim, got: f.len() });
            }
            for (slot, fi) in bracket.iter_mut().zip(&f) {
                *slot += fi;
            }
        }
        let rhs = m.matvec(&bracket);
        states.push(factor.solve(&rhs));
    }
    Ok(Trajectory { states, grid: cfg.grid })
}

/// M-orthonormal eigenpairs of `K phi = lambda M phi`.
#[derive(Debug, Clone)]
pub struct ModalBasis {
    pub eigenvalues: Vec<f64>,
    /// column `k` holds `phi_k`
    pub modes: DMatrix<f64>,
    mass: DMatrix<f64>,
}

impl ModalBasis {
    pub fn new(k: &StiffnessMatrix, m: &MassMatrix) -> Result<Self> {
        let n = k.dim();
        if m.n != n {
            return Err(Error::LengthMismatch { expected: n, got: m.n });
        }
        let mass = m.to_dense().to_nalgebra();
        let chol = mass
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Eigen("mass matrix is not positive definite".into()))?;
        let l = chol.l();
        let l_inv = l
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Eigen("singular Cholesky factor".into()))?;
        let kd = k.matrix().to_nalgebra();
        let mut c = &l_inv * kd * l_inv.transpose();
        c = 0.5 * (&c + c.transpose());
        let eig = SymmetricEigen::try_new(c, 1e-15, 10_000)
            .ok_or_else(|| Error::Eigen("symmetric eigensolver did not converge".into()))?;
        let modes = l_inv.transpose() * eig.eigenvectors;
        Ok(Self {
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            modes,
            mass,
        })
    }

    /// `(x, phi_k)_M` for every mode.
    pub fn coordinates(&self, x: &[f64]) -> Vec<f64> {
        let mx = &self.mass * DVector::from_column_slice(x);
        (self.modes.transpose() * mx).iter().copied().collect()
    }

    /// Solution of the homogeneous semi-discrete problem at time `t`.
    pub fn evolve(&self, v_h: &[f64], b_h: Option<&[f64]>, alpha: f64, t: f64) -> Result<Vec<f64>> {
        let n = self.eigenvalues.len();
        let cv = self.coordinates(v_h);
        let cb = match b_h {
            Some(b) if alpha > 1.0 => Some(self.coordinates(b)),
            _ => None,
        };
        let mut amp = vec![0.0; n];
        let ta = t.powf(alpha);
        for kk in 0..n {
            let z = -self.eigenvalues[kk] * ta;
            let mut a = cv[kk] * mittag_leffler(MLParams::new(alpha, 1.0), z)?;
            if let Some(cb) = &cb {
                a += cb[kk] * t * mittag_leffler(MLParams::new(alpha, 2.0), z)?;
            }
            amp[kk] = a;
        }
        Ok((&self.modes * DVector::from_vec(amp)).iter().copied().collect())
    }
}

/// Eigenmode solution of the semi-discrete problem with `f = 0` at time `t`.
pub fn semidiscrete_exact(
    k: &StiffnessMatrix,
    m: &MassMatrix,
    v_h: &[f64],
    b_h: Option<&[f64]>,
    alpha: f64,
    t: f64,
) -> Result<Vec<f64>> {
    if t == 0.0 {
        return Ok(v_h.to_vec());
    }
    ModalBasis::new(k, m)?.evolve(v_h, b_h, alpha, t)
}

/// P1 interpolation of `U^n` at `x`.
pub fn evaluate_trajectory(traj: &Trajectory, mesh: &UniformMesh1D, x: f64, n: usize) -> Result<f64> {
    let state = traj.states.get(n).ok_or(Error::Index {
        index: n,
        len: traj.states.len(),
    })?;
    Ok(mesh.interpolate(state, x))
}

/// `sqrt(x^T M x)`.
pub fn mass_norm(m: &MassMatrix, x: &[f64]) -> f64 {
    x.iter().zip(m.matvec(x)).map(|(a, b)| a * b).sum::<f64>().sqrt()
}
