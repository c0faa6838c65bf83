//! Closed-form amplitudes for the two driven subspaces under a constant drive,
//! and the pulse-area generalization of the two-level Rabi solution.

use crate::model::PulseShape;
use crate::numerics::ComplexScalar;

/// Composite Simpson panel count for pulse areas.
pub const SIMPSON_PANELS: usize = 2000;

/// Constant-drive solution of the three-state ladder
/// `|1_m1_a⟩ ↔ |1_m r₁⟩ ↔ |0_m r₂⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangularSolution {
    pub g: f64,
    pub omega: f64,
}

impl RectangularSolution {
    pub fn new(g: f64, omega: f64) -> Self {
        Self { g, omega }
    }

    /// `√(4g² + Ω²)`
    pub fn splitting(&self) -> f64 {
        (4.0 * self.g * self.g + self.omega * self.omega).sqrt()
    }

    /// Amplitude left on `|1_m1_a⟩` at time `t`.
    pub fn c11(&self, t: f64) -> f64 {
        let four_g2 = 4.0 * self.g * self.g;
        let omega2 = self.omega * self.omega;
        (four_g2 + omega2 * (0.5 * t * self.splitting()).cos()) / (four_g2 + omega2)
    }

    /// Lower bound `(4g² − Ω²)/(4g² + Ω²)` of [`Self::c11`] over all times.
    pub fn c11_min(&self) -> f64 {
        let four_g2 = 4.0 * self.g * self.g;
        let omega2 = self.omega * self.omega;
        (four_g2 - omega2) / (four_g2 + omega2)
    }
}

pub fn c11_rect(t: f64, g: f64, omega: f64) -> ComplexScalar {
    ComplexScalar::new(RectangularSolution::new(g, omega).c11(t), 0.0)
}

/// Amplitudes `(cos(Θ/2), −i sin(Θ/2))` on `|0_m1_a⟩` and `|0_m r₁⟩` for rotation angle Θ.
fn rabi_from_area(area: f64) -> (ComplexScalar, ComplexScalar) {
    let (s, c) = (0.5 * area).sin_cos();
    (ComplexScalar::new(c, 0.0), ComplexScalar::new(0.0, -s))
}

pub fn rabi_amplitudes(t: f64, omega: f64) -> (ComplexScalar, ComplexScalar) {
    rabi_from_area(omega * t)
}

/// `∫₀ᵗ Ω(t′) dt′` by composite Simpson's rule.
pub fn pulse_area(pulse: &PulseShape, t: f64) -> f64 {
    match *pulse {
        PulseShape::Rectangular { omega } => omega * t,
        PulseShape::Gaussian { .. } => simpson(|s| pulse.rabi_frequency(s), 0.0, t, SIMPSON_PANELS),
    }
}

pub fn rabi_amplitudes_pulsed(t: f64, pulse: &PulseShape) -> (ComplexScalar, ComplexScalar) {
    rabi_from_area(pulse_area(pulse, t))
}

/// Composite Simpson's rule on `[a, b]`; `panels` is rounded up to even.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let n = (panels.max(2) + 1) & !1;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let weight = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += weight * f(a + h * k as f64);
    }
    acc * h / 3.0
}
