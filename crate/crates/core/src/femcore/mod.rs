//! P1 finite elements on an interval: mesh, mass matrix, the fractional
//! stiffness matrix, L2 projection and quadrature-based L2 errors.

mod linalg;
mod mesh;
mod quadrature;
mod stiffness;

use std::f64::consts::PI;

pub use linalg::{Cholesky, SymMatrix, SymTridiagonal};
pub use mesh::UniformMesh1D;
pub use quadrature::{graded_points, GaussLegendre};
pub use stiffness::{assemble_stiffness, StiffnessMatrix};

use crate::error::{Error, Result};
use crate::specfun::gamma_fn;

/// Gauss order per cell used by the error norm.
pub const ERROR_QUAD_ORDER: usize = 8;
/// Levels of geometric refinement (ratio 1/2) toward the domain endpoints.
pub const ENDPOINT_GRADING_DEPTH: usize = 30;

/// `C(n, s) = 2^(2s) s Gamma(s + n/2) / (pi^(n/2) Gamma(1 - s))`.
pub fn normalization_constant(n: usize, s: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("space dimension must be at least 1".into()));
    }
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("fractional order s = {s} outside (0, 1)")));
    }
    let nf = n as f64;
    Ok(4f64.powf(s) * s * gamma_fn(s + 0.5 * nf)? / (PI.powf(0.5 * nf) * gamma_fn(1.0 - s)?))
}

/// Tridiagonal P1 mass matrix, `h/6 (1, 4, 1)`.
pub type MassMatrix = SymTridiagonal;

pub fn assemble_mass(mesh: &UniformMesh1D) -> MassMatrix {
    let h = mesh.h();
    SymTridiagonal {
        n: mesh.dofs(),
        diag: 2.0 * h / 3.0,
        off: h / 6.0,
    }
}

/// Quadrature points of element `e = [x_e, x_{e+1}]`. The two elements that
/// touch the endpoints are graded geometrically toward them.
pub fn element_points(mesh: &UniformMesh1D, rule: &GaussLegendre, e: usize) -> Vec<(f64, f64)> {
    let (x0, x1) = (mesh.node(e), mesh.node(e + 1));
    let last = mesh.subintervals() - 1;
    if e == 0 {
        graded_points(rule, x0, x1, true, ENDPOINT_GRADING_DEPTH)
    } else if e == last {
        graded_points(rule, x0, x1, false, ENDPOINT_GRADING_DEPTH)
    } else {
        rule.mapped(x0, x1).collect()
    }
}

/// Load vector `(f, phi_k)` for every degree of freedom.
pub fn load_vector<F: Fn(f64) -> f64>(f: F, mesh: &UniformMesh1D, quad_order: usize) -> Vec<f64> {
    let rule = GaussLegendre::new(quad_order.max(1));
    let n = mesh.dofs();
    let h = mesh.h();
    let mut load = vec![0.0; n];
    for e in 0..mesh.subintervals() {
        let xl = mesh.node(e);
        let (mut left, mut right) = (0.0, 0.0);
        for (x, w) in element_points(mesh, &rule, e) {
            let t = (x - xl) / h;
            let fx = f(x) * w;
            left += fx * (1.0 - t);
            right += fx * t;
        }
        // node e is dof e-1, node e+1 is dof e
        if e >= 1 {
            load[e - 1] += left;
        }
        if e < n {
            load[e] += right;
        }
    }
    load
}

/// L2 projection onto the P1 space: solves `M c = (f, phi)`.
pub fn l2_project<F: Fn(f64) -> f64>(f: F, mesh: &UniformMesh1D, quad_order: usize) -> Result<Vec<f64>> {
    if quad_order < 2 {
        return Err(Error::Config(format!("quadrature order {quad_order} below 2")));
    }
    let load = load_vector(f, mesh, quad_order);
    assemble_mass(mesh).solve(&load)
}

/// `||u_h - exact||_{L2(a,b)}` with graded quadrature in the boundary
/// elements.
pub fn l2_error<F: Fn(f64) -> f64>(coeffs: &[f64], exact: F, mesh: &UniformMesh1D) -> f64 {
    assert_eq!(coeffs.len(), mesh.dofs());
    let rule = GaussLegendre::new(ERROR_QUAD_ORDER);
    let h = mesh.h();
    let n = mesh.dofs();
    let mut sum = 0.0;
    for e in 0..mesh.subintervals() {
        let xl = mesh.node(e);
        let ul = if e == 0 { 0.0 } else { coeffs[e - 1] };
        let ur = if e == n { 0.0 } else { coeffs[e] };
        for (x, w) in element_points(mesh, &rule, e) {
            let t = (x - xl) / h;
            let d = ul * (1.0 - t) + ur * t - exact(x);
            sum += w * d * d;
        }
    }
    sum.sqrt()
}
