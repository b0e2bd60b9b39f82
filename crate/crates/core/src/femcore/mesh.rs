use crate::error::{Error, Result};

/// Uniform partition of `(a, b)` into `m` subintervals. Degrees of freedom
/// are the interior nodes `1..m-1`; the hat functions vanish outside `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformMesh1D {
    a: f64,
    b: f64,
    m: usize,
}

impl UniformMesh1D {
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Config(format!("invalid interval ({a}, {b})")));
        }
        if m < 2 {
            return Err(Error::Config(format!("mesh needs m >= 2 subintervals, got {m}")));
        }
        Ok(Self { a, b, m })
    }

    /// Mesh of `(-1, 1)`.
    pub fn unit(m: usize) -> Result<Self> {
        Self::new(-1.0, 1.0, m)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn subintervals(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / self.m as f64
    }

    /// Number of interior nodes.
    pub fn dofs(&self) -> usize {
        self.m - 1
    }

    /// Coordinate of node `i`, `0 <= i <= m`.
    pub fn node(&self, i: usize) -> f64 {
        if i == self.m {
            self.b
        } else {
            self.a + i as f64 * self.h()
        }
    }

    /// Coordinate of degree of freedom `k` (node `k + 1`).
    pub fn dof_coordinate(&self, k: usize) -> f64 {
        self.node(k + 1)
    }

    /// Hat function of degree of freedom `k` at `x`.
    pub fn hat(&self, k: usize, x: f64) -> f64 {
        let c = self.dof_coordinate(k);
        (1.0 - (x - c).abs() / self.h()).max(0.0)
    }

    /// Value at `x` of the P1 function with interior coefficients `coeffs`.
    pub fn interpolate(&self, coeffs: &[f64], x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let h = self.h();
        let e = (((x - self.a) / h).floor() as usize).min(self.m - 1);
        let xl = self.node(e);
        let t = (x - xl) / h;
        let left = if e == 0 { 0.0 } else { coeffs[e - 1] };
        let right = if e + 1 == self.m { 0.0 } else { coeffs[e] };
        left * (1.0 - t) + right * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_and_interpolation() {
        let mesh = UniformMesh1D::unit(4).unwrap();
        assert_eq!(mesh.dofs(), 3);
        assert_eq!(mesh.h(), 0.5);
        assert_eq!(mesh.node(4), 1.0);
        let c = [1.0, 2.0, 3.0];
        assert_eq!(mesh.interpolate(&c, -0.5), 1.0);
        assert_eq!(mesh.interpolate(&c, 0.5), 3.0);
        assert_eq!(mesh.interpolate(&c, 0.25), 2.5);
        assert_eq!(mesh.interpolate(&c, -1.0), 0.0);
        assert_eq!(mesh.interpolate(&c, 1.0), 0.0);
        assert_eq!(mesh.interpolate(&c, 0.75), 1.5);
        assert!(UniformMesh1D::unit(1).is_err());
        assert!(UniformMesh1D::new(1.0, 1.0, 4).is_err());
    }
}
