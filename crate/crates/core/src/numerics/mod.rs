//! Dense complex linear algebra and fixed-step ODE integration for
//! few-level quantum systems.

mod eig;
mod linalg;
mod ode;

use thiserror::Error;

pub use eig::{check_hermitian, hermitian_eig, min_eigenvalue, propagator_exact, HermitianEig};
pub use linalg::{dagger, kron, matmul, CMatrix, CVector, ComplexScalar, I, ONE, ZERO};
pub use ode::{
    integrate_lindblad, integrate_lindblad_on, integrate_schrodinger, integrate_schrodinger_on,
    rk4_integrate, schrodinger_rhs, LindbladGenerator, OdeState, StepGrid, Trajectory, DRIFT_LIMIT,
    MAX_SAMPLES,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi eigensolver did not converge")]
    NoConvergence,
    #[error("invalid time step {0}")]
    InvalidStep(f64),
    #[error("invalid time grid: {0}")]
    InvalidGrid(&'static str),
    #[error("initial state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("invalid initial density matrix: {0}")]
    InvalidDensity(&'static str),
    #[error("norm drifted by {drift:e} at t = {time}; step size too coarse")]
    NormDrift { time: f64, drift: f64 },
    #[error("trace drifted by {drift:e} at t = {time}; step size too coarse")]
    TraceDrift { time: f64, drift: f64 },
}
