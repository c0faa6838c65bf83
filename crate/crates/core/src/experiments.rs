//! Parameter sweeps over gate configurations.
//!
//! A sweep is a base [`GateConfig`] plus an axis that perturbs one quantity.
//! Points are independent and run on a rayon pool; results are gathered by
//! index, so output never depends on the worker count.

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rayon::ThreadPoolBuilder;
use thiserror::Error;

use crate::gate::{
    bell_fidelity, run_gate, run_gate_sampled, GateConfig, GateError, GateResult, InitialState,
};
use crate::model::{magic_ratio, PulseShape, SystemParams, ONE_ONE, ZERO_ONE};

pub const GSC_RATIO: f64 = 1.3;
/// Rectangular ratio whose gate time roughly matches the GSC gate at [`GSC_RATIO`].
pub const MATCHED_RECT_RATIO: f64 = 2.9;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error("invalid sweep: {0}")]
    InvalidSweep(&'static str),
    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

/// Number of worker threads for point-parallel sweeps; 0 uses rayon's default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkerPool {
    pub workers: usize,
}

impl WorkerPool {
    pub fn with_workers(workers: usize) -> Self {
        Self { workers }
    }

    pub fn install<F, R>(&self, f: F) -> Result<R, ExperimentError>
    where
        F: FnOnce() -> R + Send,
        R: Send,
    {
        if self.workers == 0 {
            Ok(f())
        } else {
            let pool = ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .map_err(|e| ExperimentError::Pool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    /// `g/Ω` of a rectangular pulse.
    RatioRect,
    /// `g/Ω_m` of a Gaussian pulse.
    RatioGsc,
    /// Relative error of the evolution time.
    RelErrT,
    /// Relative error of the coupling `g`, drive schedule unchanged.
    RelErrG,
    /// Stark shift `Δ₂/g`, with `Δ₁ = Δ₂/polar_ratio`.
    Detuning,
    /// `γ₁ = γ₂ = γ`, in units of `g`.
    GammaDecay,
    /// `κ`, in units of `g`.
    KappaDecay,
    /// Elapsed time; one run sampled at every grid point.
    Time,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::RatioRect => "ratio-rect",
            SweepAxis::RatioGsc => "ratio-gsc",
            SweepAxis::RelErrT => "rel-err-t",
            SweepAxis::RelErrG => "rel-err-g",
            SweepAxis::Detuning => "detuning",
            SweepAxis::GammaDecay => "gamma",
            SweepAxis::KappaDecay => "kappa",
            SweepAxis::Time => "time",
        }
    }
}

/// Inclusive, evenly spaced grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Range {
    pub const fn new(min: f64, max: f64, points: usize) -> Self {
        Self { min, max, points }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if !(self.min < self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(ExperimentError::InvalidSweep("range needs min < max"));
        }
        if self.points < 2 {
            return Err(ExperimentError::InvalidSweep(
                "at least two points required",
            ));
        }
        Ok(())
    }

    /// `min + span·i/(points−1)`; refining `n → 2n−1` reproduces every old point exactly.
    pub fn values(&self) -> Vec<f64> {
        let span = self.max - self.min;
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    self.min + span * i as f64 / last
                }
            })
            .collect()
    }
}

pub const DEFAULT_RATIO_RANGE: Range = Range::new(0.2, 10.0, 197);
pub const DEFAULT_REL_ERR_RANGE: Range = Range::new(-0.2, 0.2, 81);
pub const DEFAULT_DETUNING_RANGE: Range = Range::new(-1.0, 1.0, 101);
pub const DEFAULT_DECAY_RANGE: Range = Range::new(0.0, 0.02, 41);
pub const DEFAULT_TIME_POINTS: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub range: Range,
    pub base: GateConfig,
}

impl SweepSpec {
    pub fn new(axis: SweepAxis, range: Range, base: GateConfig) -> Self {
        Self { axis, range, base }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        self.range.validate()?;
        match self.axis {
            SweepAxis::RatioRect | SweepAxis::RatioGsc
                if self.range.min <= 0.0 || self.range.max > 20.0 =>
            {
                Err(ExperimentError::InvalidSweep(
                    "ratio range must lie in (0, 20]",
                ))
            }
            SweepAxis::RelErrT | SweepAxis::RelErrG
                if self.range.min < -0.5 || self.range.max > 0.5 =>
            {
                Err(ExperimentError::InvalidSweep(
                    "relative error range must lie in [-0.5, 0.5]",
                ))
            }
            SweepAxis::GammaDecay | SweepAxis::KappaDecay if self.range.min < 0.0 => Err(
                ExperimentError::InvalidSweep("decay rates must be non-negative"),
            ),
            SweepAxis::Time if self.range.min != 0.0 => {
                Err(ExperimentError::InvalidSweep("time axis must start at 0"))
            }
            _ => Ok(()),
        }
    }

    /// The base configuration with the swept quantity set to `x`.
    pub fn config_at(&self, x: f64) -> Result<GateConfig, ExperimentError> {
        let mut config = self.base;
        let g = config.params.g;
        match self.axis {
            SweepAxis::RatioRect => config.pulse = PulseShape::Rectangular { omega: g / x },
            SweepAxis::RatioGsc => config.pulse = PulseShape::gsc(g / x),
            SweepAxis::RelErrT => {
                config.duration_override = Some(self.base.nominal_gate_time()? * (1.0 + x));
            }
            SweepAxis::RelErrG => config.params.g = g * (1.0 + x),
            SweepAxis::Detuning => config.params.delta2 = x * g,
            SweepAxis::GammaDecay => {
                config.params.gamma1 = x * g;
                config.params.gamma2 = x * g;
                config.dissipative = true;
            }
            SweepAxis::KappaDecay => {
                config.params.kappa = x * g;
                config.dissipative = true;
            }
            SweepAxis::Time => config.duration_override = Some(x),
        }
        Ok(config)
    }
}

/// Bell fidelity at every grid point of `spec`.
pub fn run_sweep(spec: &SweepSpec, pool: &WorkerPool) -> Result<Vec<f64>, ExperimentError> {
    spec.validate()?;
    if spec.base.initial_state != InitialState::ProductSuperposition {
        return Err(ExperimentError::InvalidSweep(
            "sweeps need the product-superposition input",
        ));
    }
    if spec.axis == SweepAxis::Time {
        let config = spec.config_at(spec.range.max)?;
        let result = run_gate_sampled(&config, spec.range.points - 1)?;
        return Ok(result.fidelity.expect("product-superposition run"));
    }
    let configs = spec
        .range
        .values()
        .into_iter()
        .map(|x| spec.config_at(x))
        .collect::<Result<Vec<_>, _>>()?;
    pool.install(|| {
        configs
            .par_iter()
            .map(|c| Ok(bell_fidelity(&run_gate(c)?)?))
            .collect::<Result<Vec<f64>, ExperimentError>>()
    })?
}

/// Tabulated fidelities for the GSC scheme and/or a rectangular-pulse comparison.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub x: Vec<f64>,
    pub fidelity_gsc: Option<Vec<f64>>,
    pub fidelity_rect: Option<Vec<f64>>,
    /// Ordered key/value description of every input.
    pub meta: Vec<(String, String)>,
    pub wall_clock: Duration,
}

impl SweepResult {
    pub fn gsc(&self) -> &[f64] {
        self.fidelity_gsc.as_deref().unwrap_or(&[])
    }

    pub fn rect(&self) -> &[f64] {
        self.fidelity_rect.as_deref().unwrap_or(&[])
    }

    /// Fidelity at the grid point closest to `x`.
    pub fn at(series: &[f64], xs: &[f64], x: f64) -> Option<f64> {
        xs.iter()
            .zip(series)
            .min_by(|a, b| (a.0 - x).abs().total_cmp(&(b.0 - x).abs()))
            .map(|(_, f)| *f)
    }
}

/// Appends `prefix`-qualified descriptions of every input of `config`.
pub fn describe(prefix: &str, config: &GateConfig, meta: &mut Vec<(String, String)>) {
    let p = &config.params;
    let mut push = |k: &str, v: String| meta.push((format!("{prefix}{k}"), v));
    push("pulse", config.pulse.kind().to_string());
    push("peak_rabi", format!("{:e}", config.pulse.peak()));
    if let PulseShape::Gaussian { tau, .. } = config.pulse {
        push("tau", format!("{tau:e}"));
    }
    push("g", format!("{:e}", p.g));
    push("delta2", format!("{:e}", p.delta2));
    push("polar_ratio", format!("{:e}", p.polar_ratio));
    push("gamma1", format!("{:e}", p.gamma1));
    push("gamma2", format!("{:e}", p.gamma2));
    push("kappa", format!("{:e}", p.kappa));
    push("dissipative", config.dissipative.to_string());
    if let Some(d) = config.duration_override {
        push("duration", format!("{d:e}"));
    }
    if let Ok(dt) = config.max_step() {
        push("dt", format!("{dt:e}"));
    }
}

fn base_meta(axis: SweepAxis, range: &Range) -> Vec<(String, String)> {
    vec![
        ("axis".into(), axis.name().into()),
        ("min".into(), format!("{:e}", range.min)),
        ("max".into(), format!("{:e}", range.max)),
        ("points".into(), range.points.to_string()),
    ]
}

/// Two base configurations compared on the same axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub gsc: GateConfig,
    pub rect: GateConfig,
}

impl Comparison {
    pub fn new(params: SystemParams, gsc_ratio: f64, rect_ratio: f64) -> Self {
        Self {
            gsc: GateConfig::gsc(params, gsc_ratio),
            rect: GateConfig::rectangular(params, rect_ratio),
        }
    }

    /// GSC at `g/Ω_m = 1.3` against the fastest rectangular gate `g/Ω = √3/2`.
    pub fn fastest_rect(params: SystemParams) -> Self {
        Self::new(params, GSC_RATIO, magic_ratio(1).expect("k = 1"))
    }

    /// GSC at `g/Ω_m = 1.3` against rectangular `g/Ω = 2.9`, at nearly equal gate times.
    pub fn matched_time(params: SystemParams) -> Self {
        Self::new(params, GSC_RATIO, MATCHED_RECT_RATIO)
    }

    /// Sweeps both configurations along `axis`.
    pub fn sweep(
        &self,
        axis: SweepAxis,
        range: Range,
        pool: &WorkerPool,
    ) -> Result<SweepResult, ExperimentError> {
        let start = Instant::now();
        let gsc = run_sweep(&SweepSpec::new(axis, range, self.gsc), pool)?;
        let rect = run_sweep(&SweepSpec::new(axis, range, self.rect), pool)?;
        let mut meta = base_meta(axis, &range);
        describe("gsc.", &self.gsc, &mut meta);
        describe("rect.", &self.rect, &mut meta);
        Ok(SweepResult {
            axis,
            x: range.values(),
            fidelity_gsc: Some(gsc),
            fidelity_rect: Some(rect),
            meta,
            wall_clock: start.elapsed(),
        })
    }
}

/// Sweeps one configuration; its column is chosen by pulse kind.
pub fn sweep_single(
    axis: SweepAxis,
    range: Range,
    base: GateConfig,
    pool: &WorkerPool,
) -> Result<SweepResult, ExperimentError> {
    let start = Instant::now();
    let fidelity = run_sweep(&SweepSpec::new(axis, range, base), pool)?;
    let mut meta = base_meta(axis, &range);
    let is_gsc = matches!(base.pulse, PulseShape::Gaussian { .. });
    describe(if is_gsc { "gsc." } else { "rect." }, &base, &mut meta);
    let (fidelity_gsc, fidelity_rect) = if is_gsc {
        (Some(fidelity), None)
    } else {
        (None, Some(fidelity))
    };
    Ok(SweepResult {
        axis,
        x: range.values(),
        fidelity_gsc,
        fidelity_rect,
        meta,
        wall_clock: start.elapsed(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseKind {
    Rectangular,
    Gsc,
}

/// Ideal fidelity at the nominal gate time versus `g/Ω` (or `g/Ω_m`), `g` fixed.
pub fn sweep_ratio(
    kind: PulseKind,
    range: Range,
    params: SystemParams,
    pool: &WorkerPool,
) -> Result<SweepResult, ExperimentError> {
    let (axis, base) = match kind {
        PulseKind::Rectangular => (SweepAxis::RatioRect, GateConfig::rectangular(params, 1.0)),
        PulseKind::Gsc => (SweepAxis::RatioGsc, GateConfig::gsc(params, 1.0)),
    };
    sweep_single(axis, range, base, pool)
}

/// Both pulse kinds on the same ratio grid.
pub fn sweep_ratio_both(
    range: Range,
    params: SystemParams,
    pool: &WorkerPool,
) -> Result<SweepResult, ExperimentError> {
    let start = Instant::now();
    let gsc = sweep_ratio(PulseKind::Gsc, range, params, pool)?;
    let rect = sweep_ratio(PulseKind::Rectangular, range, params, pool)?;
    let mut meta = gsc.meta;
    meta.extend(
        rect.meta
            .into_iter()
            .filter(|(k, _)| k.starts_with("rect.")),
    );
    if let Some(axis) = meta.iter_mut().find(|(k, _)| k == "axis") {
        axis.1 = "ratio".into();
    }
    Ok(SweepResult {
        axis: SweepAxis::RatioGsc,
        x: gsc.x,
        fidelity_gsc: gsc.fidelity_gsc,
        fidelity_rect: rect.fidelity_rect,
        meta,
        wall_clock: start.elapsed(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorTarget {
    GateTime,
    Coupling,
}

/// Fidelity versus relative error `δX/X` of the gate time or of `g`.
pub fn sweep_relative_error(
    which: ErrorTarget,
    range: Range,
    base: &Comparison,
    pool: &WorkerPool,
) -> Result<SweepResult, ExperimentError> {
    let axis = match which {
        ErrorTarget::GateTime => SweepAxis::RelErrT,
        ErrorTarget::Coupling => SweepAxis::RelErrG,
    };
    base.sweep(axis, range, pool)
}

/// Fidelity versus the `|r₂⟩` Stark shift in units of `g`.
pub fn sweep_detuning(
    range: Range,
    base: GateConfig,
    pool: &WorkerPool,
) -> Result<SweepResult, ExperimentError> {
    sweep_single(SweepAxis::Detuning, range, base, pool)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayChannel {
    /// Rydberg decay with `γ₁ = γ₂`.
    Gamma,
    /// Cavity photon loss.
    Kappa,
}

/// Dissipative fidelity versus a decay rate in units of `g`.
pub fn sweep_decay(
    which: DecayChannel,
    range: Range,
    base: &Comparison,
    pool: &WorkerPool,
) -> Result<SweepResult, ExperimentError> {
    let axis = match which {
        DecayChannel::Gamma => SweepAxis::GammaDecay,
        DecayChannel::Kappa => SweepAxis::KappaDecay,
    };
    base.sweep(axis, range, pool)
}

/// Fidelity versus time for both schemes over the longer of the two gate times.
pub fn fidelity_trajectory(
    base: &Comparison,
    points: usize,
    pool: &WorkerPool,
) -> Result<SweepResult, ExperimentError> {
    let horizon = base
        .gsc
        .nominal_gate_time()?
        .max(base.rect.nominal_gate_time()?);
    base.sweep(SweepAxis::Time, Range::new(0.0, horizon, points), pool)
}

/// Rates of the cesium `90S₁/₂ / 90P₃/₂` setup with a `Q = 10⁶` resonator, in rad/s.
pub fn cesium_params() -> SystemParams {
    SystemParams {
        g: TAU * 2.0e6,
        delta2: 0.0,
        polar_ratio: crate::model::DEFAULT_POLAR_RATIO,
        gamma1: TAU * 194.0,
        gamma2: TAU * 80.0,
        kappa: TAU * 5.0e3,
    }
}

pub fn cesium_example_with(params: SystemParams) -> Result<f64, ExperimentError> {
    let config = GateConfig::gsc(params, GSC_RATIO).with_dissipation(true);
    Ok(bell_fidelity(&run_gate(&config)?)?)
}

/// Final Bell fidelity of the dissipative GSC gate with cesium parameters.
pub fn cesium_example() -> Result<f64, ExperimentError> {
    cesium_example_with(cesium_params())
}

/// Population and phase trajectories of the GSC gate from `|1_m1_a⟩` and `|0_m1_a⟩`.
pub fn population_runs(params: SystemParams) -> Result<(GateResult, GateResult), ExperimentError> {
    let base = GateConfig::gsc(params, GSC_RATIO);
    let from_11 = run_gate(&base.with_initial(InitialState::Basis(ONE_ONE)))?;
    let from_01 = run_gate(&base.with_initial(InitialState::Basis(ZERO_ONE)))?;
    Ok((from_11, from_01))
}

/// Every dataset behind the figure set, in dimensionless units (`g = 1`).
#[derive(Debug, Clone)]
pub struct FigureData {
    pub ratio: SweepResult,
    pub populations_11: GateResult,
    pub populations_01: GateResult,
    pub trajectory: SweepResult,
    pub rel_err_time: SweepResult,
    pub rel_err_coupling: SweepResult,
    pub detuning: SweepResult,
    pub gamma: SweepResult,
    pub kappa: SweepResult,
    pub gamma_fast: SweepResult,
    pub kappa_fast: SweepResult,
    pub cesium_fidelity: f64,
}

pub fn figure_data(pool: &WorkerPool) -> Result<FigureData, ExperimentError> {
    let params = SystemParams::ideal(1.0);
    let fastest = Comparison::fastest_rect(params);
    let matched = Comparison::matched_time(params);
    let (populations_11, populations_01) = population_runs(params)?;
    Ok(FigureData {
        ratio: sweep_ratio_both(DEFAULT_RATIO_RANGE, params, pool)?,
        populations_11,
        populations_01,
        trajectory: fidelity_trajectory(&matched, DEFAULT_TIME_POINTS, pool)?,
        rel_err_time: sweep_relative_error(
            ErrorTarget::GateTime,
            DEFAULT_REL_ERR_RANGE,
            &fastest,
            pool,
        )?,
        rel_err_coupling: sweep_relative_error(
            ErrorTarget::Coupling,
            DEFAULT_REL_ERR_RANGE,
            &fastest,
            pool,
        )?,
        detuning: sweep_detuning(
            DEFAULT_DETUNING_RANGE,
            GateConfig::gsc(params, GSC_RATIO),
            pool,
        )?,
        gamma: sweep_decay(DecayChannel::Gamma, DEFAULT_DECAY_RANGE, &matched, pool)?,
        kappa: sweep_decay(DecayChannel::Kappa, DEFAULT_DECAY_RANGE, &matched, pool)?,
        gamma_fast: sweep_decay(DecayChannel::Gamma, DEFAULT_DECAY_RANGE, &fastest, pool)?,
        kappa_fast: sweep_decay(DecayChannel::Kappa, DEFAULT_DECAY_RANGE, &fastest, pool)?,
        cesium_fidelity: cesium_example()?,
    })
}
