//! Browser bindings: the fully discrete solution next to the exact one, CQ
//! weight tables and Mittag-Leffler relaxation curves.
//!
//! The `*_values` functions are plain Rust so they can be tested natively;
//! the exported wrappers only translate errors.

use wasm_bindgen::prelude::*;

use fracsolve_core::cqtime::{cq_weights, UniformTimeGrid};
use fracsolve_core::femcore::{l2_error, UniformMesh1D};
use fracsolve_core::harness::solve_case;
use fracsolve_core::manufactured::{CaseId, ManufacturedCase, DEFAULT_DEGREE};
use fracsolve_core::specfun::{mittag_leffler, MLParams};
use fracsolve_core::stepper::SolverConfig;

/// Largest problem the page will attempt.
pub const MAX_SUBINTERVALS: usize = 512;
pub const MAX_STEPS: usize = 2000;

/// Nodal values of `U^N` and of `u(., T)` on the mesh of `(-1, 1)`.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    x: Vec<f64>,
    numeric: Vec<f64>,
    exact: Vec<f64>,
    error: f64,
}

#[wasm_bindgen]
impl Profile {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn numeric(&self) -> Vec<f64> {
        self.numeric.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    /// L2 error at the final time.
    #[wasm_bindgen(getter)]
    pub fn error(&self) -> f64 {
        self.error
    }
}

pub fn profile_values(case: &str, alpha: f64, s: f64, m: usize, steps: usize, t_end: f64) -> Result<Profile, String> {
    if m > MAX_SUBINTERVALS || steps > MAX_STEPS {
        return Err(format!("at most {MAX_SUBINTERVALS} cells and {MAX_STEPS} steps in the browser"));
    }
    if steps == 0 || !(t_end > 0.0) {
        return Err("need at least one step and t_end > 0".into());
    }
    let id: CaseId = case.parse().map_err(|e: fracsolve_core::Error| e.to_string())?;
    let case = ManufacturedCase::new(id, alpha, s, DEFAULT_DEGREE).map_err(|e| e.to_string())?;
    let grid = UniformTimeGrid::new(t_end / steps as f64, steps).map_err(|e| e.to_string())?;
    let mesh = UniformMesh1D::new(-1.0, 1.0, m).map_err(|e| e.to_string())?;
    let cfg = SolverConfig::new(alpha, s, grid, mesh).map_err(|e| e.to_string())?;
    let traj = solve_case(&case, &cfg).map_err(|e| e.to_string())?;
    let ht = case.time_value(grid.t_end()).map_err(|e| e.to_string())?;

    let x: Vec<f64> = (0..=m).map(|i| mesh.node(i)).collect();
    let last = traj.last();
    let numeric: Vec<f64> = (0..=m)
        .map(|i| if i == 0 || i == m { 0.0 } else { last[i - 1] })
        .collect();
    let exact: Vec<f64> = x.iter().map(|&xi| ht * case.profile(xi)).collect();
    let error = l2_error(last, |xi| ht * case.profile(xi), &mesh);
    Ok(Profile { x, numeric, exact, error })
}

pub fn weight_values(alpha: f64, tau: f64, n: usize) -> Result<Vec<f64>, String> {
    if n > 100_000 {
        return Err("n too large".into());
    }
    cq_weights(alpha, tau, n).map(|w| w.weights().to_vec()).map_err(|e| e.to_string())
}

/// `E_{alpha,beta}(-lambda t^alpha)` on `n + 1` equispaced points of `[0, t_max]`.
pub fn relaxation_values(alpha: f64, beta: f64, lambda: f64, t_max: f64, n: usize) -> Result<Vec<f64>, String> {
    if n == 0 || n > 10_000 || !(t_max > 0.0) {
        return Err("need 1 <= n <= 10000 and t_max > 0".into());
    }
    (0..=n)
        .map(|i| {
            let t = t_max * i as f64 / n as f64;
            mittag_leffler(MLParams::new(alpha, beta), -lambda * t.powf(alpha)).map_err(|e| e.to_string())
        })
        .collect()
}

#[wasm_bindgen]
pub fn solution_profile(case: &str, alpha: f64, s: f64, m: usize, steps: usize, t_end: f64) -> Result<Profile, JsError> {
    profile_values(case, alpha, s, m, steps, t_end).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn convolution_weights(alpha: f64, tau: f64, n: usize) -> Result<Vec<f64>, JsError> {
    weight_values(alpha, tau, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn relaxation_curve(alpha: f64, beta: f64, lambda: f64, t_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
    relaxation_values(alpha, beta, lambda, t_max, n).map_err(|e| JsError::new(&e))
}
