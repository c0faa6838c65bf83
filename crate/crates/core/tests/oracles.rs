use std::f64::consts::PI;

use statrs::function::erf::erf;

use rydgate::analytic::{pulse_area, rabi_amplitudes_pulsed};
use rydgate::experiments::cesium_params;
use rydgate::gate::GateConfig;
use rydgate::model::{gate_time, gsc_tau, magic_ratio, PulseShape, SystemParams};

#[test]
fn gaussian_area_over_the_gate_is_two_pi_erf_two() {
    for omega_m in [0.3, 1.0 / 1.3, 2.0, 17.0] {
        let pulse = PulseShape::gsc(omega_m);
        let tau = gsc_tau(omega_m);
        assert!((PI.sqrt() * omega_m * tau - 2.0 * PI).abs() < 1e-12);
        let area = pulse_area(&pulse, 4.0 * tau);
        let expected = 2.0 * PI * erf(2.0);
        assert!(
            (area - expected).abs() < 1e-9 * expected,
            "{area} vs {expected}"
        );
    }
}

#[test]
fn gaussian_partial_areas_follow_the_error_function() {
    let omega_m = 0.9;
    let tau = gsc_tau(omega_m);
    let pulse = PulseShape::gsc(omega_m);
    for frac in [0.1, 0.5, 0.77, 1.0] {
        let t = 4.0 * tau * frac;
        let expected = 0.5 * PI.sqrt() * omega_m * tau * (erf((t - 2.0 * tau) / tau) + erf(2.0));
        assert!((pulse_area(&pulse, t) - expected).abs() < 1e-9);
    }
    let (a, b) = rabi_amplitudes_pulsed(4.0 * tau, &pulse);
    let half = PI * erf(2.0);
    assert!((a.re - half.cos()).abs() < 1e-9 && (b.im + half.sin()).abs() < 1e-9);
}

#[test]
fn matched_gate_times_are_near_eighteen_point_four() {
    let params = SystemParams::ideal(1.0);
    let gsc = GateConfig::gsc(params, 1.3).nominal_gate_time().unwrap();
    let rect = GateConfig::rectangular(params, 2.9)
        .nominal_gate_time()
        .unwrap();
    assert!((gsc - 18.4).abs() < 0.05, "{gsc}");
    assert!((rect - 18.4).abs() < 0.2, "{rect}");
    assert!((gsc - 5.2 * PI.sqrt() * 2.0).abs() < 1e-12);
}

#[test]
fn fastest_rectangular_gate() {
    let ratio = magic_ratio(1).unwrap();
    assert!((ratio - 3f64.sqrt() / 2.0).abs() < 1e-15);
    let t = gate_time(&PulseShape::Rectangular { omega: 1.0 / ratio }).unwrap();
    assert!((t - PI * 3f64.sqrt()).abs() < 1e-12);
    assert!((magic_ratio(3).unwrap() - 35f64.sqrt() / 2.0).abs() < 1e-15);
}

#[test]
fn cesium_rates() {
    let p = cesium_params();
    let omega_m = p.g / 1.3;
    assert!((omega_m / (2.0 * PI) / 1e6 - 1.54).abs() < 0.005);
    assert!((p.kappa / (2.0 * PI) - 5e3).abs() < 1e-9);
}
