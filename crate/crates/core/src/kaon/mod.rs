//! Neutral-kaon dynamics: single-particle evolution with decay, strangeness
//! oscillation, CP-violation observables, and the entangled pair under
//! active strangeness measurements.
//!
//! Conventions (ħ = 1):
//!
//! ```text
//! |K_S⟩ = N[(1+ε)|K⁰⟩ − (1−ε)|K̄⁰⟩]      N = 1/√(2(1+|ε|²))
//! |K_L⟩ = N[(1+ε)|K⁰⟩ + (1−ε)|K̄⁰⟩]
//! ```
//!
//! At `ε = 0` this is `|K⁰⟩ = (|K_S⟩+|K_L⟩)/√2`, `|K̄⁰⟩ = (−|K_S⟩+|K_L⟩)/√2`,
//! with the minus sign on `K_S`. The mass eigenstates evolve as
//! `e^{−i m t − Γ t/2}`. Flavour amplitudes are linear in `ε`; `|ε|²` only
//! appears in `N`.

mod constants;
mod pair;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use constants::{ConstantsFile, KaonConstants};
pub use pair::{
    active_strangeness_joint, active_strangeness_outcomes, evolve_pair, ActiveQuestion,
    KaonPairState, ThreeOutcomeTable,
};

use crate::error::{Error, Result};

/// Strangeness eigenstate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlavorState {
    /// `K⁰`, strangeness `S = +1`.
    #[serde(rename = "K0")]
    K0,
    /// `K̄⁰`, strangeness `S = −1`.
    #[serde(rename = "K0bar")]
    K0bar,
}

impl FlavorState {
    pub const ALL: [FlavorState; 2] = [FlavorState::K0, FlavorState::K0bar];

    pub fn strangeness(self) -> i8 {
        match self {
            FlavorState::K0 => 1,
            FlavorState::K0bar => -1,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            FlavorState::K0 => FlavorState::K0bar,
            FlavorState::K0bar => FlavorState::K0,
        }
    }

    /// `(⟨f|K_S⟩, ⟨f|K_L⟩)`.
    pub(crate) fn mass_projections(self, c: &KaonConstants) -> (Complex64, Complex64) {
        let n = c.normalization();
        let one = Complex64::new(1.0, 0.0);
        match self {
            FlavorState::K0 => {
                let a = (one + c.epsilon) * n;
                (a, a)
            }
            FlavorState::K0bar => {
                let b = (one - c.epsilon) * n;
                (-b, b)
            }
        }
    }

    /// Coefficients of `|f⟩` in the (non-orthogonal) mass basis.
    pub(crate) fn mass_coefficients(self, c: &KaonConstants) -> (Complex64, Complex64) {
        let n = c.normalization();
        let one = Complex64::new(1.0, 0.0);
        match self {
            FlavorState::K0 => {
                let a = one / ((one + c.epsilon) * (2.0 * n));
                (a, a)
            }
            FlavorState::K0bar => {
                let b = one / ((one - c.epsilon) * (2.0 * n));
                (-b, b)
            }
        }
    }
}

impl std::fmt::Display for FlavorState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FlavorState::K0 => "K0",
            FlavorState::K0bar => "K0bar",
        })
    }
}

impl std::str::FromStr for FlavorState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K0" | "k0" => Ok(FlavorState::K0),
            "K0bar" | "k0bar" | "K0b" | "k0b" => Ok(FlavorState::K0bar),
            other => Err(Error::input(format!("unknown flavour {other:?} (expected K0 or K0bar)"))),
        }
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTime(t))
    }
}

/// Mass-basis amplitudes of a single kaon at `time`.
///
/// `a_s` and `a_l` multiply the non-orthogonal `|K_S⟩`, `|K_L⟩`, so the
/// state norm is [`SingleKaonAmplitude::norm_squared`], not `|a_s|²+|a_l|²`
/// (the two agree at `ε = 0`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleKaonAmplitude {
    pub a_s: Complex64,
    pub a_l: Complex64,
    pub time: f64,
}

impl SingleKaonAmplitude {
    /// `⟨f|ψ(t)⟩`.
    pub fn flavor_amplitude(&self, f: FlavorState, c: &KaonConstants) -> Complex64 {
        let (ps, pl) = f.mass_projections(c);
        self.a_s * ps + self.a_l * pl
    }

    pub fn flavor_probability(&self, f: FlavorState, c: &KaonConstants) -> f64 {
        self.flavor_amplitude(f, c).norm_sqr()
    }

    /// Surviving probability, `|⟨K⁰|ψ⟩|² + |⟨K̄⁰|ψ⟩|²`.
    pub fn norm_squared(&self, c: &KaonConstants) -> f64 {
        FlavorState::ALL.iter().map(|&f| self.flavor_probability(f, c)).sum()
    }
}

/// Evolves a kaon produced as `initial` at `t = 0`.
pub fn evolve_single(initial: FlavorState, t: f64, c: &KaonConstants) -> Result<SingleKaonAmplitude> {
    check_time(t)?;
    let (cs, cl) = initial.mass_coefficients(c);
    let (us, ul) = c.propagators(t);
    Ok(SingleKaonAmplitude { a_s: cs * us, a_l: cl * ul, time: t })
}

/// Flavour content of an evolved kaon; `p_decayed` is the lost norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OscillationProbabilities {
    pub p_k0: f64,
    pub p_k0bar: f64,
    pub p_decayed: f64,
}

pub fn oscillation_probabilities(
    initial: FlavorState,
    t: f64,
    c: &KaonConstants,
) -> Result<OscillationProbabilities> {
    let amp = evolve_single(initial, t, c)?;
    // clamp away last-bit rounding so each entry stays in [0, 1]
    let p_k0 = amp.flavor_probability(FlavorState::K0, c).clamp(0.0, 1.0);
    let p_k0bar = amp.flavor_probability(FlavorState::K0bar, c).clamp(0.0, 1.0);
    let p_decayed = (1.0 - p_k0 - p_k0bar).clamp(0.0, 1.0);
    Ok(OscillationProbabilities { p_k0, p_k0bar, p_decayed })
}

/// `⟨K_S|K_L⟩ = 2 Re ε / (1 + |ε|²)`.
pub fn mass_eigenstate_overlap(epsilon: Complex64) -> f64 {
    2.0 * epsilon.re / (1.0 + epsilon.norm_sqr())
}

/// Semileptonic charge asymmetry
/// `δ = [Γ(ℓ⁺) − Γ(ℓ⁻)] / [Γ(ℓ⁺) + Γ(ℓ⁻)] = 2 Re ε / (1 + |ε|²)`.
///
/// This is the standard identification of the K_L charge asymmetry; it has
/// the same functional form as [`mass_eigenstate_overlap`].
pub fn semileptonic_asymmetry(epsilon: Complex64) -> f64 {
    2.0 * epsilon.re / (1.0 + epsilon.norm_sqr())
}
