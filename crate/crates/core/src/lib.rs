//! Solvers for the space-time fractional evolution equation
//! `Caputo d_t^alpha u + (-Delta)^s u = f` on an interval, with P1 finite
//! elements in space and backward-Euler convolution quadrature in time.

pub mod cqtime;
pub mod error;
pub mod femcore;
pub mod harness;
pub mod manufactured;
pub mod specfun;
pub mod stepper;

pub use error::{Error, Result};
