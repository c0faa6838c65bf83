#![allow(dead_code)]

use rydgate::gate::{run_gate, GateConfig, InitialState};
use rydgate::model::{
    collapse_operators, hamiltonian, PulseShape, SystemParams, DIM, ONE_ONE, ONE_R1, ONE_ZERO,
    ZERO_ONE, ZERO_R1, ZERO_R2, ZERO_ZERO,
};
use rydgate::numerics::{integrate_lindblad_on, min_eigenvalue, CVector, StepGrid};

/// One random draw of the physical setup.
#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub g: f64,
    pub ratio: f64,
    pub delta2: f64,
    pub gaussian: bool,
    pub gamma: f64,
    pub kappa: f64,
}

impl Draw {
    pub fn params(&self) -> SystemParams {
        SystemParams {
            delta2: self.delta2,
            gamma1: self.gamma,
            gamma2: 0.5 * self.gamma,
            kappa: self.kappa,
            ..SystemParams::ideal(self.g)
        }
    }

    pub fn lossless(&self) -> SystemParams {
        SystemParams {
            delta2: self.delta2,
            ..SystemParams::ideal(self.g)
        }
    }

    pub fn config(&self, params: SystemParams) -> GateConfig {
        if self.gaussian {
            GateConfig::gsc(params, self.ratio)
        } else {
            GateConfig::rectangular(params, self.ratio)
        }
    }
}

/// Largest deviation of the total population from one over a unitary run.
pub fn norm_error(config: &GateConfig) -> f64 {
    let result = run_gate(config).unwrap();
    result
        .populations
        .iter()
        .map(|p| (p.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Population found outside the closed subspace reachable from each basis input.
pub fn leakage(base: &GateConfig) -> f64 {
    let cases = [
        (ZERO_ZERO, vec![ZERO_ZERO]),
        (ONE_ZERO, vec![ONE_ZERO]),
        (ZERO_ONE, vec![ZERO_ONE, ZERO_R1]),
        (ONE_ONE, vec![ONE_ONE, ONE_R1, ZERO_R2]),
    ];
    let mut worst: f64 = 0.0;
    for (start, span) in cases {
        let result = run_gate(&base.with_initial(InitialState::Basis(start))).unwrap();
        for row in &result.populations {
            let outside: f64 = (0..DIM)
                .filter(|k| !span.iter().any(|b| b.flat() == *k))
                .map(|k| row[k])
                .sum();
            worst = worst.max(outside);
        }
    }
    worst
}

/// Largest change of `P(|0_m0_a⟩)` over a run from the product input.
pub fn ground_drift(config: &GateConfig) -> f64 {
    let result = run_gate(config).unwrap();
    let p0 = result.populations[0][ZERO_ZERO.flat()];
    result
        .populations
        .iter()
        .map(|p| (p[ZERO_ZERO.flat()] - p0).abs())
        .fold(0.0, f64::max)
}

/// Worst trace error, Hermiticity error and most negative eigenvalue over a dissipative run.
pub fn density_errors(config: &GateConfig) -> (f64, f64, f64) {
    let params = config.params;
    let pulse: PulseShape = config.pulse;
    let psi0 = rydgate::gate::initial_state();
    let rho0 = psi0.outer(&psi0);
    let grid = StepGrid::new(config.duration().unwrap(), config.max_step().unwrap()).unwrap();
    let traj = integrate_lindblad_on(
        |t| hamiltonian(&params, &pulse, t),
        &collapse_operators(&params),
        &rho0,
        &grid,
    )
    .unwrap();
    let mut trace: f64 = 0.0;
    let mut herm: f64 = 0.0;
    let mut min_eig: f64 = 0.0;
    for (k, rho) in traj.states.iter().enumerate() {
        trace = trace.max((rho.trace().re - 1.0).abs().max(rho.trace().im.abs()));
        herm = herm.max(rho.hermiticity_error());
        if k % 50 == 0 || k + 1 == traj.len() {
            min_eig = min_eig.min(min_eigenvalue(rho).unwrap());
        }
    }
    (trace, herm, min_eig)
}

/// Largest difference of final populations and fidelity when the step is halved.
pub fn dt_halving_error(config: &GateConfig) -> f64 {
    let coarse = run_gate(config).unwrap();
    let fine = run_gate(&config.with_dt(0.5 * coarse.dt)).unwrap();
    let a = coarse.populations.last().unwrap();
    let b = fine.populations.last().unwrap();
    let pop = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let fid = (coarse.final_fidelity().unwrap() - fine.final_fidelity().unwrap()).abs();
    pop.max(fid)
}

pub fn normalized(v: Vec<rydgate::numerics::ComplexScalar>) -> CVector {
    let v = CVector::from_vec(v);
    let n = v.norm();
    v.scale(rydgate::numerics::ComplexScalar::new(1.0 / n, 0.0))
}
