//! Hybrid cavity ⊗ atom basis, the driven interaction Hamiltonian, drive
//! pulse shapes and the Lindblad jump operators.
//!
//! The Hilbert space is one resonator mode truncated at one photon times a
//! four-level atom `{|0_a⟩, |1_a⟩, |r₁⟩, |r₂⟩}`. Flat index = 4·photon + atom.
//! The truncation is exact here: the Hamiltonian conserves the excitation
//! number of every computational input and cavity decay only lowers it.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

use crate::numerics::{kron, CMatrix, ComplexScalar};

pub const DIM: usize = 8;
pub const ATOM_LEVELS: usize = 4;
pub const PHOTON_LEVELS: usize = 2;
pub const DEFAULT_POLAR_RATIO: f64 = 22.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("pulse rate must be positive, got {0}")]
    NonPositiveRate(f64),
    #[error("invalid system parameter: {0}")]
    InvalidParams(&'static str),
    #[error("flat basis index {0} out of range 0..8")]
    IndexOutOfRange(usize),
    #[error("magic ratio order must be at least 1")]
    InvalidOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Zero,
    One,
    R1,
    R2,
}

impl Atom {
    pub const ALL: [Atom; 4] = [Atom::Zero, Atom::One, Atom::R1, Atom::R2];

    pub fn ordinal(self) -> usize {
        match self {
            Atom::Zero => 0,
            Atom::One => 1,
            Atom::R1 => 2,
            Atom::R2 => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Atom::Zero => "0a",
            Atom::One => "1a",
            Atom::R1 => "r1",
            Atom::R2 => "r2",
        }
    }
}

/// A product basis state `|photon_m, atom⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub photon: u8,
    pub atom: Atom,
}

impl BasisIndex {
    pub const fn new(photon: u8, atom: Atom) -> Self {
        Self { photon, atom }
    }

    pub fn flat(self) -> usize {
        ATOM_LEVELS * self.photon as usize + self.atom.ordinal()
    }

    pub fn from_flat(index: usize) -> Result<Self, ModelError> {
        if index >= DIM {
            return Err(ModelError::IndexOutOfRange(index));
        }
        Ok(Self {
            photon: (index / ATOM_LEVELS) as u8,
            atom: Atom::ALL[index % ATOM_LEVELS],
        })
    }

    pub fn all() -> impl Iterator<Item = BasisIndex> {
        (0..DIM).map(|i| Self::from_flat(i).expect("in range"))
    }

    /// Short label such as `0m1a` or `1mr2`.
    pub fn label(self) -> String {
        format!("{}m{}", self.photon, self.atom.label())
    }

    pub fn parse(label: &str) -> Option<Self> {
        Self::all().find(|b| b.label() == label)
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}_m {}⟩", self.photon, self.atom.label())
    }
}

pub const ZERO_ZERO: BasisIndex = BasisIndex::new(0, Atom::Zero);
pub const ZERO_ONE: BasisIndex = BasisIndex::new(0, Atom::One);
pub const ZERO_R1: BasisIndex = BasisIndex::new(0, Atom::R1);
pub const ZERO_R2: BasisIndex = BasisIndex::new(0, Atom::R2);
pub const ONE_ZERO: BasisIndex = BasisIndex::new(1, Atom::Zero);
pub const ONE_ONE: BasisIndex = BasisIndex::new(1, Atom::One);
pub const ONE_R1: BasisIndex = BasisIndex::new(1, Atom::R1);
pub const ONE_R2: BasisIndex = BasisIndex::new(1, Atom::R2);

/// Computational states in the order `{|0_m0_a⟩, |0_m1_a⟩, |1_m0_a⟩, |1_m1_a⟩}`.
pub const COMPUTATIONAL: [BasisIndex; 4] = [ZERO_ZERO, ZERO_ONE, ONE_ZERO, ONE_ONE];

/// Physical rates, all as angular frequencies in a common unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Atom–photon coupling on `|r₁⟩ ↔ |r₂⟩`.
    pub g: f64,
    /// Stark shift of `|r₂⟩`.
    pub delta2: f64,
    /// Polarizability ratio α₂/α₁; the shift of `|r₁⟩` is `delta2 / polar_ratio`.
    pub polar_ratio: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub kappa: f64,
}

impl SystemParams {
    /// Lossless, unshifted system with coupling `g`.
    pub fn ideal(g: f64) -> Self {
        Self {
            g,
            delta2: 0.0,
            polar_ratio: DEFAULT_POLAR_RATIO,
            gamma1: 0.0,
            gamma2: 0.0,
            kappa: 0.0,
        }
    }

    pub fn delta1(&self) -> f64 {
        self.delta2 / self.polar_ratio
    }

    pub fn is_lossless(&self) -> bool {
        self.gamma1 == 0.0 && self.gamma2 == 0.0 && self.kappa == 0.0
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.g > 0.0) || !self.g.is_finite() {
            return Err(ModelError::InvalidParams("g must be positive"));
        }
        if !(self.polar_ratio > 0.0) {
            return Err(ModelError::InvalidParams(
                "polarizability ratio must be positive",
            ));
        }
        if !self.delta2.is_finite() {
            return Err(ModelError::InvalidParams("detuning must be finite"));
        }
        for rate in [self.gamma1, self.gamma2, self.kappa] {
            if !(rate >= 0.0) || !rate.is_finite() {
                return Err(ModelError::InvalidParams(
                    "decay rates must be non-negative",
                ));
            }
        }
        Ok(())
    }
}

/// Time profile of the Rabi frequency driving `|1_a⟩ ↔ |r₁⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseShape {
    Rectangular {
        omega: f64,
    },
    /// `Ω(t) = Ω_m exp(−(t − 2τ)²/τ²)`, evaluated on `[0, 4τ]` with its tails kept.
    Gaussian {
        omega_m: f64,
        tau: f64,
    },
}

impl PulseShape {
    /// Gaussian pulse with the width that makes its area approximately 2π.
    pub fn gsc(omega_m: f64) -> Self {
        PulseShape::Gaussian {
            omega_m,
            tau: gsc_tau(omega_m),
        }
    }

    pub fn rabi_frequency(&self, t: f64) -> f64 {
        match *self {
            PulseShape::Rectangular { omega } => omega,
            PulseShape::Gaussian { omega_m, tau } => {
                let x = (t - 2.0 * tau) / tau;
                omega_m * (-x * x).exp()
            }
        }
    }

    /// Peak Rabi frequency (Ω or Ω_m).
    pub fn peak(&self) -> f64 {
        match *self {
            PulseShape::Rectangular { omega } => omega,
            PulseShape::Gaussian { omega_m, .. } => omega_m,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PulseShape::Rectangular { .. } => "rectangular",
            PulseShape::Gaussian { .. } => "gaussian",
        }
    }
}

/// `H(t) = g(|r₂⟩⟨r₁| a + h.c.) + Ω(t)/2 (|1_a⟩⟨r₁| + h.c.) + Δ₁|r₁⟩⟨r₁| + Δ₂|r₂⟩⟨r₂|`
pub fn hamiltonian(params: &SystemParams, pulse: &PulseShape, t: f64) -> CMatrix {
    let mut h = CMatrix::zeros(DIM);
    let g = ComplexScalar::new(params.g, 0.0);
    h[(ZERO_R2.flat(), ONE_R1.flat())] = g;
    h[(ONE_R1.flat(), ZERO_R2.flat())] = g;

    let half_rabi = ComplexScalar::new(0.5 * pulse.rabi_frequency(t), 0.0);
    let delta1 = ComplexScalar::new(params.delta1(), 0.0);
    let delta2 = ComplexScalar::new(params.delta2, 0.0);
    for photon in 0..PHOTON_LEVELS as u8 {
        let one = BasisIndex::new(photon, Atom::One).flat();
        let r1 = BasisIndex::new(photon, Atom::R1).flat();
        let r2 = BasisIndex::new(photon, Atom::R2).flat();
        h[(one, r1)] = half_rabi;
        h[(r1, one)] = half_rabi;
        h[(r1, r1)] = delta1;
        h[(r2, r2)] = delta2;
    }
    h
}

/// Cavity annihilation operator on the two-level Fock space.
pub fn annihilation() -> CMatrix {
    CMatrix::ket_bra(PHOTON_LEVELS, 0, 1)
}

/// Atomic `|to⟩⟨from|` lifted to the full space.
pub fn atomic_transition(to: Atom, from: Atom) -> CMatrix {
    kron(
        &CMatrix::identity(PHOTON_LEVELS),
        &CMatrix::ket_bra(ATOM_LEVELS, to.ordinal(), from.ordinal()),
    )
}

/// Jump operators `√γ₁|1_a⟩⟨r₁|`, `√γ₂|1_a⟩⟨r₂|`, `√κ a`; zero rates are omitted.
pub fn collapse_operators(params: &SystemParams) -> Vec<CMatrix> {
    let mut ops = Vec::with_capacity(3);
    let mut push = |rate: f64, op: CMatrix| {
        if rate > 0.0 {
            ops.push(op.scale(ComplexScalar::new(rate.sqrt(), 0.0)));
        }
    };
    push(params.gamma1, atomic_transition(Atom::One, Atom::R1));
    push(params.gamma2, atomic_transition(Atom::One, Atom::R2));
    push(
        params.kappa,
        kron(&annihilation(), &CMatrix::identity(ATOM_LEVELS)),
    );
    ops
}

/// Nominal gate duration: `2π/Ω` for a rectangular pulse, `4τ` for a Gaussian one.
pub fn gate_time(pulse: &PulseShape) -> Result<f64, ModelError> {
    match *pulse {
        PulseShape::Rectangular { omega } => {
            if !(omega > 0.0) {
                return Err(ModelError::NonPositiveRate(omega));
            }
            Ok(2.0 * PI / omega)
        }
        PulseShape::Gaussian { omega_m, tau } => {
            if !(omega_m > 0.0) {
                return Err(ModelError::NonPositiveRate(omega_m));
            }
            if !(tau > 0.0) {
                return Err(ModelError::NonPositiveRate(tau));
            }
            Ok(4.0 * tau)
        }
    }
}

/// Gaussian width `2√π/Ω_m`, for which `√π Ω_m τ = 2π`.
pub fn gsc_tau(omega_m: f64) -> f64 {
    2.0 * PI.sqrt() / omega_m
}

/// `√(4k² − 1)/2`: the k-th ratio `g/Ω` at which a rectangular pulse of
/// duration `2π/Ω` returns `|1_m1_a⟩` to itself.
pub fn magic_ratio(k: u32) -> Result<f64, ModelError> {
    if k == 0 {
        return Err(ModelError::InvalidOrder);
    }
    let k = k as f64;
    Ok((4.0 * k * k - 1.0).sqrt() / 2.0)
}
