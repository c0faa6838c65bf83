//! Fixed-step classical Runge–Kutta integration of the Schrödinger and
//! Lindblad master equations.
//!
//! The step count is fixed up front from the requested maximum step, so two
//! runs with the same inputs perform exactly the same floating-point
//! operations. Trajectories keep every `stride`-th step plus both endpoints.

use super::eig::{check_hermitian, min_eigenvalue};
use super::linalg::{CMatrix, CVector, ComplexScalar, I, ZERO};
use super::NumericsError;

/// Upper bound on stored samples for the default stride.
pub const MAX_SAMPLES: usize = 2000;
/// Norm or trace drift beyond this aborts integration.
pub const DRIFT_LIMIT: f64 = 1e-6;
pub const INITIAL_STATE_TOL: f64 = 1e-10;

/// Uniform time grid over `[0, t_final]` and the subset of steps that are recorded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepGrid {
    pub t_final: f64,
    pub steps: usize,
    pub stride: usize,
}

impl StepGrid {
    /// Smallest uniform grid with step `<= dt_max`, sampled every `ceil(steps / 2000)` steps.
    pub fn new(t_final: f64, dt_max: f64) -> Result<Self, NumericsError> {
        let steps = Self::step_count(t_final, dt_max)?;
        let stride = steps.div_ceil(MAX_SAMPLES).max(1);
        Ok(Self {
            t_final,
            steps,
            stride,
        })
    }

    /// Grid whose samples fall exactly on `intervals + 1` equally spaced times.
    pub fn with_intervals(
        t_final: f64,
        dt_max: f64,
        intervals: usize,
    ) -> Result<Self, NumericsError> {
        if intervals == 0 {
            return Err(NumericsError::InvalidGrid(
                "at least one sampling interval required",
            ));
        }
        let minimal = Self::step_count(t_final, dt_max)?;
        let stride = minimal.div_ceil(intervals).max(1);
        Ok(Self {
            t_final,
            steps: stride * intervals,
            stride,
        })
    }

    fn step_count(t_final: f64, dt_max: f64) -> Result<usize, NumericsError> {
        if !(t_final >= 0.0) || !t_final.is_finite() {
            return Err(NumericsError::InvalidGrid(
                "final time must be finite and non-negative",
            ));
        }
        if t_final == 0.0 {
            return Ok(0);
        }
        if !(dt_max > 0.0) || !dt_max.is_finite() {
            return Err(NumericsError::InvalidStep(dt_max));
        }
        Ok(((t_final / dt_max).ceil() as usize).max(1))
    }

    pub fn dt(&self) -> f64 {
        if self.steps == 0 {
            0.0
        } else {
            self.t_final / self.steps as f64
        }
    }

    pub fn time(&self, step: usize) -> f64 {
        if step == self.steps {
            self.t_final
        } else {
            self.t_final * step as f64 / self.steps as f64
        }
    }

    fn is_sample(&self, step: usize) -> bool {
        step.is_multiple_of(self.stride) || step == self.steps
    }

    pub fn sample_count(&self) -> usize {
        self.steps / self.stride + 1 + usize::from(!self.steps.is_multiple_of(self.stride))
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
}

impl<S> Trajectory<S> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &S)> {
        Some((*self.times.last()?, self.states.last()?))
    }
}

pub trait OdeState: Clone {
    /// `self += a * x`
    fn add_scaled(&mut self, a: f64, x: &Self);
}

impl OdeState for CVector {
    fn add_scaled(&mut self, a: f64, x: &Self) {
        self.axpy(ComplexScalar::new(a, 0.0), x);
    }
}

impl OdeState for CMatrix {
    fn add_scaled(&mut self, a: f64, x: &Self) {
        self.axpy(ComplexScalar::new(a, 0.0), x);
    }
}

fn rk4_step<S: OdeState>(rhs: &mut impl FnMut(f64, &S) -> S, t: f64, dt: f64, y: &S) -> S {
    let k1 = rhs(t, y);
    let mut tmp = y.clone();
    tmp.add_scaled(0.5 * dt, &k1);
    let k2 = rhs(t + 0.5 * dt, &tmp);
    let mut tmp = y.clone();
    tmp.add_scaled(0.5 * dt, &k2);
    let k3 = rhs(t + 0.5 * dt, &tmp);
    let mut tmp = y.clone();
    tmp.add_scaled(dt, &k3);
    let k4 = rhs(t + dt, &tmp);

    let mut next = y.clone();
    next.add_scaled(dt / 6.0, &k1);
    next.add_scaled(dt / 3.0, &k2);
    next.add_scaled(dt / 3.0, &k3);
    next.add_scaled(dt / 6.0, &k4);
    next
}

/// Runs RK4 on `grid`, calling `check(t, y)` after every step.
pub fn rk4_integrate<S: OdeState>(
    mut rhs: impl FnMut(f64, &S) -> S,
    y0: S,
    grid: &StepGrid,
    mut check: impl FnMut(f64, &S) -> Result<(), NumericsError>,
) -> Result<Trajectory<S>, NumericsError> {
    let capacity = grid.sample_count();
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);
    times.push(0.0);
    states.push(y0.clone());

    let dt = grid.dt();
    let mut y = y0;
    for step in 0..grid.steps {
        let t = grid.time(step);
        y = rk4_step(&mut rhs, t, dt, &y);
        let t_next = grid.time(step + 1);
        check(t_next, &y)?;
        if grid.is_sample(step + 1) {
            times.push(t_next);
            states.push(y.clone());
        }
    }
    Ok(Trajectory { times, states })
}

type Triplets = Vec<(usize, usize, ComplexScalar)>;

/// `dψ/dt = −i H(t) ψ`
pub fn schrodinger_rhs(h: &CMatrix, psi: &CVector) -> CVector {
    let mut out = CVector::zeros(psi.dim());
    for (i, k, a) in h.nonzeros() {
        out[i] += -I * a * psi[k];
    }
    out
}

fn check_normalized(psi: &CVector) -> Result<(), NumericsError> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > INITIAL_STATE_TOL {
        Err(NumericsError::NotNormalized { norm })
    } else {
        Ok(())
    }
}

pub fn integrate_schrodinger(
    h_of_t: impl Fn(f64) -> CMatrix,
    psi0: &CVector,
    t_final: f64,
    dt: f64,
) -> Result<Trajectory<CVector>, NumericsError> {
    if !(dt > 0.0) {
        return Err(NumericsError::InvalidStep(dt));
    }
    let grid = StepGrid::new(t_final, dt)?;
    integrate_schrodinger_on(h_of_t, psi0, &grid)
}

pub fn integrate_schrodinger_on(
    h_of_t: impl Fn(f64) -> CMatrix,
    psi0: &CVector,
    grid: &StepGrid,
) -> Result<Trajectory<CVector>, NumericsError> {
    check_normalized(psi0)?;
    rk4_integrate(
        |t, psi: &CVector| schrodinger_rhs(&h_of_t(t), psi),
        psi0.clone(),
        grid,
        |t, psi| {
            let drift = (psi.norm() - 1.0).abs();
            if drift > DRIFT_LIMIT {
                Err(NumericsError::NormDrift { time: t, drift })
            } else {
                Ok(())
            }
        },
    )
}

/// Right-hand side of `dρ/dt = −i[H, ρ] + Σ (LρL† − ½{L†L, ρ})` with the
/// jump operators stored sparsely.
pub struct LindbladGenerator {
    dim: usize,
    jumps: Vec<Triplets>,
    anticommutator: CMatrix,
}

impl LindbladGenerator {
    pub fn new(dim: usize, collapse: &[CMatrix]) -> Result<Self, NumericsError> {
        let mut anticommutator = CMatrix::zeros(dim);
        let mut jumps = Vec::with_capacity(collapse.len());
        for l in collapse {
            if l.dim() != dim {
                return Err(NumericsError::DimensionMismatch {
                    left: dim,
                    right: l.dim(),
                });
            }
            let ldl = l.dagger().matmul(l)?;
            anticommutator.axpy(ComplexScalar::new(1.0, 0.0), &ldl);
            jumps.push(l.nonzeros());
        }
        Ok(Self {
            dim,
            jumps,
            anticommutator,
        })
    }

    pub fn rhs(&self, h: &CMatrix, rho: &CMatrix) -> CMatrix {
        let n = self.dim;
        // H_eff = H − (i/2) Σ L†L ; Y = −i H_eff ρ ; dρ = Y + Y† + Σ LρL†
        let mut h_eff = h.clone();
        h_eff.axpy(ComplexScalar::new(0.0, -0.5), &self.anticommutator);
        let mut y = CMatrix::zeros(n);
        for (i, k, a) in h_eff.nonzeros() {
            let coeff = -I * a;
            for j in 0..n {
                y[(i, j)] += coeff * rho[(k, j)];
            }
        }
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = y[(i, j)] + y[(j, i)].conj();
            }
        }
        for jump in &self.jumps {
            for &(i, k, a) in jump {
                for &(j, l, b) in jump {
                    let r = rho[(k, l)];
                    if r != ZERO {
                        out[(i, j)] += a * r * b.conj();
                    }
                }
            }
        }
        out
    }
}

fn check_density(rho: &CMatrix) -> Result<(), NumericsError> {
    check_hermitian(rho).map_err(|_| NumericsError::InvalidDensity("not Hermitian"))?;
    if (rho.trace() - ComplexScalar::new(1.0, 0.0)).norm() > INITIAL_STATE_TOL {
        return Err(NumericsError::InvalidDensity("trace differs from one"));
    }
    if min_eigenvalue(rho)? < -INITIAL_STATE_TOL {
        return Err(NumericsError::InvalidDensity("not positive semidefinite"));
    }
    Ok(())
}

pub fn integrate_lindblad(
    h_of_t: impl Fn(f64) -> CMatrix,
    collapse: &[CMatrix],
    rho0: &CMatrix,
    t_final: f64,
    dt: f64,
) -> Result<Trajectory<CMatrix>, NumericsError> {
    if !(dt > 0.0) {
        return Err(NumericsError::InvalidStep(dt));
    }
    let grid = StepGrid::new(t_final, dt)?;
    integrate_lindblad_on(h_of_t, collapse, rho0, &grid)
}

pub fn integrate_lindblad_on(
    h_of_t: impl Fn(f64) -> CMatrix,
    collapse: &[CMatrix],
    rho0: &CMatrix,
    grid: &StepGrid,
) -> Result<Trajectory<CMatrix>, NumericsError> {
    check_density(rho0)?;
    let generator = LindbladGenerator::new(rho0.dim(), collapse)?;
    rk4_integrate(
        |t, rho: &CMatrix| generator.rhs(&h_of_t(t), rho),
        rho0.clone(),
        grid,
        |t, rho| {
            let drift = (rho.trace() - ComplexScalar::new(1.0, 0.0)).norm();
            if drift > DRIFT_LIMIT {
                Err(NumericsError::TraceDrift { time: t, drift })
            } else {
                Ok(())
            }
        },
    )
}
