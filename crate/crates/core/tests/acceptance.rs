//! Acceptance criteria 1–10. Each test prints one `PASS`/`FAIL` line.

mod common;

use std::f64::consts::PI;
use std::io::Write;

use rand::{rngs::StdRng, Rng, SeedableRng};

use common::{density_errors, dt_halving_error, ground_drift, leakage, norm_error, Draw};
use rydgate::analytic::{c11_rect, rabi_amplitudes};
use rydgate::experiments::{
    cesium_example, population_runs, run_sweep, sweep_decay, sweep_ratio, Comparison, DecayChannel,
    PulseKind, Range, SweepAxis, SweepSpec, WorkerPool, DEFAULT_DECAY_RANGE,
};
use rydgate::gate::{bell_fidelity, phase_distance, run_gate, GateConfig};
use rydgate::model::{
    hamiltonian, magic_ratio, PulseShape, SystemParams, DIM, ONE_ONE, ONE_R1, ZERO_ONE, ZERO_R1,
};
use rydgate::numerics::{integrate_schrodinger, CVector};

fn report(n: u32, name: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("acceptance {n:>2} {verdict} {name}: {detail}\n");
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

fn ideal() -> SystemParams {
    SystemParams::ideal(1.0)
}

#[test]
fn criterion_01_magic_ratios() {
    let mut worst: f64 = 1.0;
    for k in 1..=3 {
        let config = GateConfig::rectangular(ideal(), magic_ratio(k).unwrap());
        worst = worst.min(bell_fidelity(&run_gate(&config).unwrap()).unwrap());
    }
    report(
        1,
        "magic ratios k = 1, 2, 3",
        worst - 1.0 >= -1e-3,
        format!("min F = {worst:.6}"),
    );
}

#[test]
fn criterion_02_analytic_oracles() {
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let g: f64 = rng.gen_range(0.2..3.0);
        let omega: f64 = rng.gen_range(0.2..3.0);
        let params = SystemParams::ideal(g);
        let pulse = PulseShape::Rectangular { omega };
        let splitting = (4.0 * g * g + omega * omega).sqrt();
        let cycle = (2.0 * PI / omega).max(4.0 * PI / splitting);
        let dt = 0.02 / g.max(omega);
        let h = |t| hamiltonian(&params, &pulse, t);

        let traj =
            integrate_schrodinger(h, &CVector::basis(DIM, ONE_ONE.flat()), cycle, dt).unwrap();
        for (t, psi) in traj.times.iter().zip(&traj.states) {
            worst = worst.max((psi[ONE_ONE.flat()] - c11_rect(*t, g, omega)).norm());
        }
        let traj =
            integrate_schrodinger(h, &CVector::basis(DIM, ZERO_ONE.flat()), cycle, dt).unwrap();
        for (t, psi) in traj.times.iter().zip(&traj.states) {
            let (a, b) = rabi_amplitudes(*t, omega);
            worst = worst.max((psi[ZERO_ONE.flat()] - a).norm());
            worst = worst.max((psi[ZERO_R1.flat()] - b).norm());
        }
    }
    report(
        2,
        "closed-form agreement, 20 draws",
        worst < 1e-8,
        format!("max deviation = {worst:.3e}"),
    );
}

#[test]
fn criterion_03_gsc_plateau() {
    let sweep = sweep_ratio(
        PulseKind::Gsc,
        Range::new(1.05, 10.0, 180),
        ideal(),
        &WorkerPool::default(),
    )
    .unwrap();
    let min = sweep.gsc().iter().cloned().fold(f64::MAX, f64::min);
    report(
        3,
        "GSC plateau g/Ω_m ∈ [1.05, 10]",
        min > 0.99,
        format!("min F = {min:.6}"),
    );
}

#[test]
fn criterion_04_rectangular_plateau() {
    let sweep = sweep_ratio(
        PulseKind::Rectangular,
        Range::new(8.0, 10.0, 81),
        ideal(),
        &WorkerPool::default(),
    )
    .unwrap();
    let min = sweep.rect().iter().cloned().fold(f64::MAX, f64::min);
    report(
        4,
        "rectangular plateau g/Ω ∈ [8, 10]",
        min > 0.99,
        format!("min F = {min:.6}"),
    );
}

#[test]
fn criterion_05_phase_behavior() {
    let (from_11, from_01) = population_runs(ideal()).unwrap();
    let p11 = from_11.final_population(ONE_ONE).unwrap();
    let phi11 = from_11.final_phase().unwrap();
    let phi01 = from_01.final_phase().unwrap();
    // The peak-population bound is a desk-scale proxy for the qualitative suppression claim.
    let peak = from_11.peak_population(ONE_R1);
    let pass = p11 > 0.99
        && phase_distance(phi11, 0.0) < 0.05
        && phase_distance(phi01, PI) < 0.05
        && peak < 0.2;
    report(
        5,
        "phases at g/Ω_m = 1.3",
        pass,
        format!("P_11 = {p11:.6}, φ_11 = {phi11:.4}, φ_01 = {phi01:.4}, peak P_1mr1 = {peak:.4} (proxy)"),
    );
}

#[test]
fn criterion_06_detuning_robustness() {
    let base = GateConfig::gsc(ideal(), 1.3);
    let range = Range::new(-0.5, 0.5, 51);
    let series = run_sweep(
        &SweepSpec::new(SweepAxis::Detuning, range, base),
        &WorkerPool::default(),
    )
    .unwrap();
    let (x, min) = range
        .values()
        .into_iter()
        .zip(series)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    report(
        6,
        "detuning |Δ₂| ≤ 0.5g, Δ₁ = Δ₂/22",
        min >= 0.98,
        format!("min F = {min:.6} at Δ₂ = {x:+.2}g"),
    );
}

#[test]
fn criterion_07_error_scans() {
    let cmp = Comparison::fastest_rect(ideal());
    let mut details = Vec::new();
    let mut pass = true;
    for axis in [SweepAxis::RelErrT, SweepAxis::RelErrG] {
        let range = Range::new(-0.1, 0.1, 3);
        let gsc = run_sweep(
            &SweepSpec::new(axis, range, cmp.gsc),
            &WorkerPool::default(),
        )
        .unwrap();
        let rect = run_sweep(
            &SweepSpec::new(axis, range, cmp.rect),
            &WorkerPool::default(),
        )
        .unwrap();
        for i in [0, 2] {
            let drop_gsc = gsc[1] - gsc[i];
            let drop_rect = rect[1] - rect[i];
            pass &= drop_gsc < drop_rect;
            details.push(format!(
                "{}{:+.1}: {drop_gsc:.2e} vs {drop_rect:.2e}",
                axis.name(),
                range.values()[i]
            ));
        }
    }
    report(7, "GSC drop < rectangular drop", pass, details.join(", "));
}

#[test]
fn criterion_08_decay_comparison() {
    let pool = WorkerPool::default();
    let matched = Comparison::matched_time(ideal());
    let fastest = Comparison::fastest_rect(ideal());
    let gamma = sweep_decay(DecayChannel::Gamma, DEFAULT_DECAY_RANGE, &matched, &pool).unwrap();
    let kappa = sweep_decay(DecayChannel::Kappa, DEFAULT_DECAY_RANGE, &matched, &pool).unwrap();
    let gamma_fast =
        sweep_decay(DecayChannel::Gamma, DEFAULT_DECAY_RANGE, &fastest, &pool).unwrap();
    let kappa_fast =
        sweep_decay(DecayChannel::Kappa, DEFAULT_DECAY_RANGE, &fastest, &pool).unwrap();

    let kappa_worse = |g: &[f64], k: &[f64]| (1..g.len()).all(|i| (k[0] - k[i]) > (g[0] - g[i]));
    let a = kappa_worse(gamma.gsc(), kappa.gsc())
        && kappa_worse(gamma.rect(), kappa.rect())
        && kappa_worse(gamma_fast.rect(), kappa_fast.rect());
    let b = (0..gamma.x.len())
        .all(|i| gamma.gsc()[i] >= gamma.rect()[i] && kappa.gsc()[i] >= kappa.rect()[i]);
    let last = gamma.x.len() - 1;
    report(
        8,
        "κ hurts more than γ; GSC ≥ rectangular at matched T",
        a && b,
        format!(
            "(a) {a}, (b) {b}; at rate {:.3}g: F_γ gsc/rect = {:.4}/{:.4}, F_κ gsc/rect = {:.4}/{:.4}",
            gamma.x[last],
            gamma.gsc()[last],
            gamma.rect()[last],
            kappa.gsc()[last],
            kappa.rect()[last]
        ),
    );
}

#[test]
fn criterion_09_cesium_example() {
    let f = cesium_example().unwrap();
    report(9, "cesium example", f > 0.98, format!("F = {f:.6}"));
}

#[test]
fn criterion_10_invariants_on_random_draws() {
    let mut rng = StdRng::seed_from_u64(10);
    let cases = 50;
    let mut worst = [0.0f64; 7];
    for _ in 0..cases {
        let g = rng.gen_range(0.3..3.0);
        let draw = Draw {
            g,
            ratio: rng.gen_range(0.5..5.0),
            delta2: rng.gen_range(-1.0..1.0) * g,
            gaussian: rng.gen_bool(0.5),
            gamma: rng.gen_range(0.0..0.05) * g,
            kappa: rng.gen_range(0.0..0.05) * g,
        };
        let unitary = draw.config(draw.lossless());
        let (trace, herm, min_eig) =
            density_errors(&draw.config(draw.params()).with_dissipation(true));
        let values = [
            norm_error(&unitary),
            trace,
            herm,
            -min_eig,
            leakage(&unitary),
            ground_drift(&unitary),
            dt_halving_error(&unitary),
        ];
        for (w, v) in worst.iter_mut().zip(values) {
            *w = w.max(v);
        }
    }
    let limits = [1e-8, 1e-8, 1e-12, 1e-9, 1e-10, 1e-9, 1e-6];
    let pass = worst.iter().zip(limits).all(|(w, l)| *w < l);
    let names = [
        "norm",
        "trace",
        "hermiticity",
        "negativity",
        "leakage",
        "P_0m0a drift",
        "dt halving",
    ];
    let detail = names
        .iter()
        .zip(worst)
        .map(|(n, w)| format!("{n} {w:.1e}"))
        .collect::<Vec<_>>()
        .join(", ");
    report(
        10,
        &format!("invariants over {cases} random draws"),
        pass,
        detail,
    );
}
