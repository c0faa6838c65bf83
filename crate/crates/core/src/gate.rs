//! A single controlled-Z gate run: initial and target states, time evolution
//! (pure or dissipative), and the observables recorded along the way.

use thiserror::Error;

use crate::model::{
    collapse_operators, gate_time, hamiltonian, BasisIndex, ModelError, PulseShape, SystemParams,
    COMPUTATIONAL, DIM,
};
use crate::numerics::{
    integrate_lindblad_on, integrate_schrodinger_on, CMatrix, CVector, ComplexScalar,
    NumericsError, StepGrid, ONE,
};

/// Minimum number of steps across the gate.
pub const MIN_STEPS: f64 = 20_000.0;
/// Step size never exceeds this fraction of the fastest rate's period scale.
pub const RATE_STEP_FACTOR: f64 = 0.02;
/// Amplitudes smaller than this have no meaningful phase.
pub const PHASE_GAP_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum GateError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid gate configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("Bell fidelity requires a run from the product-superposition input")]
    NotProductRun,
    #[error("gate result holds no samples")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    /// `(|0_m⟩ + |1_m⟩)/√2 ⊗ (|0_a⟩ + |1_a⟩)/√2`
    ProductSuperposition,
    Basis(BasisIndex),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateConfig {
    pub params: SystemParams,
    pub pulse: PulseShape,
    pub dissipative: bool,
    /// Evolve for this long instead of the nominal gate time; the pulse schedule is unchanged.
    pub duration_override: Option<f64>,
    pub initial_state: InitialState,
    /// Replaces the default step-size rule.
    pub dt_override: Option<f64>,
}

impl GateConfig {
    /// Lossless run from the product superposition at the nominal gate time.
    pub fn new(params: SystemParams, pulse: PulseShape) -> Self {
        Self {
            params,
            pulse,
            dissipative: false,
            duration_override: None,
            initial_state: InitialState::ProductSuperposition,
            dt_override: None,
        }
    }

    /// Gaussian soft-control pulse with `Ω_m = g / ratio`.
    pub fn gsc(params: SystemParams, ratio: f64) -> Self {
        Self::new(params, PulseShape::gsc(params.g / ratio))
    }

    /// Rectangular pulse with `Ω = g / ratio`.
    pub fn rectangular(params: SystemParams, ratio: f64) -> Self {
        Self::new(
            params,
            PulseShape::Rectangular {
                omega: params.g / ratio,
            },
        )
    }

    pub fn with_initial(mut self, initial: InitialState) -> Self {
        self.initial_state = initial;
        self
    }

    pub fn with_duration(mut self, duration: f64) -> Self {
        self.duration_override = Some(duration);
        self
    }

    pub fn with_dissipation(mut self, dissipative: bool) -> Self {
        self.dissipative = dissipative;
        self
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt_override = Some(dt);
        self
    }

    pub fn nominal_gate_time(&self) -> Result<f64, GateError> {
        Ok(gate_time(&self.pulse)?)
    }

    pub fn duration(&self) -> Result<f64, GateError> {
        match self.duration_override {
            Some(d) if d >= 0.0 && d.is_finite() => Ok(d),
            Some(_) => Err(GateError::InvalidConfig(
                "duration override must be non-negative",
            )),
            None => self.nominal_gate_time(),
        }
    }

    /// `min(T/20000, 0.02/max(g, Ω))` unless overridden.
    pub fn max_step(&self) -> Result<f64, GateError> {
        if let Some(dt) = self.dt_override {
            if !(dt > 0.0) {
                return Err(GateError::InvalidConfig("step override must be positive"));
            }
            return Ok(dt);
        }
        let fastest = self.params.g.max(self.pulse.peak());
        let from_rates = RATE_STEP_FACTOR / fastest;
        let duration = self.duration()?;
        Ok(if duration > 0.0 {
            (duration / MIN_STEPS).min(from_rates)
        } else {
            from_rates
        })
    }

    pub fn validate(&self) -> Result<(), GateError> {
        self.params.validate()?;
        match self.pulse {
            PulseShape::Rectangular { omega } if !(omega >= 0.0) => {
                return Err(ModelError::NonPositiveRate(omega).into())
            }
            PulseShape::Gaussian { omega_m, tau } if !(omega_m >= 0.0 && tau > 0.0) => {
                return Err(ModelError::NonPositiveRate(omega_m.min(tau)).into())
            }
            _ => {}
        }
        self.duration()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GateResult {
    pub config: GateConfig,
    pub duration: f64,
    pub dt: f64,
    pub steps: usize,
    pub times: Vec<f64>,
    /// `|⟨k|ψ(t)⟩|²` (or `ρ_kk`) per flat basis index.
    pub populations: Vec<[f64; DIM]>,
    /// Phase of the amplitude on the initial basis state; `None` marks samples
    /// where that amplitude is too small. Present only for pure basis-state runs.
    pub tracked_phase: Option<Vec<Option<f64>>>,
    /// Overlap with the ideal post-gate state; present only for product-superposition runs.
    pub fidelity: Option<Vec<f64>>,
}

impl GateResult {
    pub fn final_population(&self, basis: BasisIndex) -> Option<f64> {
        self.populations.last().map(|p| p[basis.flat()])
    }

    pub fn final_phase(&self) -> Option<f64> {
        self.tracked_phase.as_ref()?.last().copied().flatten()
    }

    pub fn final_fidelity(&self) -> Option<f64> {
        self.fidelity.as_ref()?.last().copied()
    }

    /// Largest population of `basis` over the whole trajectory.
    pub fn peak_population(&self, basis: BasisIndex) -> f64 {
        self.populations
            .iter()
            .map(|p| p[basis.flat()])
            .fold(0.0, f64::max)
    }
}

/// Controlled-Z on `{|0_m0_a⟩, |0_m1_a⟩, |1_m0_a⟩, |1_m1_a⟩}`: the sign of `|0_m1_a⟩` flips.
pub fn cz_matrix() -> CMatrix {
    CMatrix::from_diagonal(&[ONE, -ONE, ONE, ONE])
}

/// Lifts a vector over the computational states into the full basis.
pub fn embed_computational(amplitudes: &[ComplexScalar; 4]) -> CVector {
    let mut v = CVector::zeros(DIM);
    for (basis, amp) in COMPUTATIONAL.iter().zip(amplitudes) {
        v[basis.flat()] = *amp;
    }
    v
}

pub fn initial_state() -> CVector {
    embed_computational(&[ComplexScalar::new(0.5, 0.0); 4])
}

/// Ideal output of the CZ gate on [`initial_state`], normalized.
pub fn target_state() -> CVector {
    let half = ComplexScalar::new(0.5, 0.0);
    embed_computational(&[half, -half, half, half])
}

fn initial_vector(initial: InitialState) -> CVector {
    match initial {
        InitialState::ProductSuperposition => initial_state(),
        InitialState::Basis(b) => CVector::basis(DIM, b.flat()),
    }
}

/// Runs the gate with the default sampling (at most ~2000 stored samples).
pub fn run_gate(config: &GateConfig) -> Result<GateResult, GateError> {
    config.validate()?;
    let grid = StepGrid::new(config.duration()?, config.max_step()?)?;
    evolve(config, &grid)
}

/// Runs the gate with samples exactly at `intervals + 1` equally spaced times.
pub fn run_gate_sampled(config: &GateConfig, intervals: usize) -> Result<GateResult, GateError> {
    config.validate()?;
    let grid = StepGrid::with_intervals(config.duration()?, config.max_step()?, intervals)?;
    evolve(config, &grid)
}

fn phase_of(amp: ComplexScalar) -> Option<f64> {
    (amp.norm() >= PHASE_GAP_THRESHOLD).then(|| amp.arg())
}

fn evolve(config: &GateConfig, grid: &StepGrid) -> Result<GateResult, GateError> {
    let params = config.params;
    let pulse = config.pulse;
    let h_of_t = move |t: f64| hamiltonian(&params, &pulse, t);
    let psi0 = initial_vector(config.initial_state);
    let target = target_state();
    let product_run = config.initial_state == InitialState::ProductSuperposition;

    let mut populations = Vec::new();
    let mut fidelity = product_run.then(Vec::new);
    let mut tracked_phase = None;
    let times;

    if config.dissipative {
        let collapse = collapse_operators(&params);
        let rho0 = psi0.outer(&psi0);
        let traj = integrate_lindblad_on(h_of_t, &collapse, &rho0, grid)?;
        for rho in &traj.states {
            let mut row = [0.0; DIM];
            for (k, p) in row.iter_mut().enumerate() {
                *p = rho[(k, k)].re;
            }
            populations.push(row);
            if let Some(f) = fidelity.as_mut() {
                f.push(rho.expectation(&target)?.re);
            }
        }
        times = traj.times;
    } else {
        let traj = integrate_schrodinger_on(h_of_t, &psi0, grid)?;
        let tracked = match config.initial_state {
            InitialState::Basis(b) => Some(b.flat()),
            InitialState::ProductSuperposition => None,
        };
        let mut phases = tracked.map(|_| Vec::with_capacity(traj.len()));
        for psi in &traj.states {
            let mut row = [0.0; DIM];
            for (k, p) in row.iter_mut().enumerate() {
                *p = psi[k].norm_sqr();
            }
            populations.push(row);
            if let Some(f) = fidelity.as_mut() {
                f.push(target.inner(psi)?.norm_sqr());
            }
            if let (Some(k0), Some(ph)) = (tracked, phases.as_mut()) {
                ph.push(phase_of(psi[k0]));
            }
        }
        tracked_phase = phases;
        times = traj.times;
    }

    Ok(GateResult {
        config: *config,
        duration: grid.t_final,
        dt: grid.dt(),
        steps: grid.steps,
        times,
        populations,
        tracked_phase,
        fidelity,
    })
}

/// Bell-state fidelity at the last sample of a product-superposition run.
pub fn bell_fidelity(result: &GateResult) -> Result<f64, GateError> {
    let series = result.fidelity.as_ref().ok_or(GateError::NotProductRun)?;
    series.last().copied().ok_or(GateError::Empty)
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}
