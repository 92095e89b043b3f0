//! Weak hyperon decay as an imperfect spin measurement.
//!
//! A decay with asymmetry `α` acts on the spin through two weighted
//! projectors, `K± = √ω± Π_{ω₁±ω₂}` with `ω± = (1 ± α)/2`. For spin ½,
//! `ω₁ = 0` and `ω₂` points along the daughter momentum, which turns the
//! angular distribution of the daughters into a noisy spin readout. For a
//! `ΛΛ̄` pair in the singlet this gives
//! `p(n, m) = (1 − α_Λ α_Λ̄ n·m) / (4π)²`.

mod angular;
mod events;
mod species;
mod witness;

pub use angular::{joint_angular_pdf, joint_angular_pdf_from_state, single_angular_pdf, DecayDirection};
pub use events::{
    read_events_csv, sample_events, sample_events_with_workers, sample_separable_events,
    write_events_csv, EventBatch,
};
pub use species::{kraus_from_species, HyperonSpecies, Spin};
pub use witness::{hyperon_chsh_bound, witness_from_events, HyperonChshBound, WitnessReport};

use crate::error::{Error, Result};

/// Default `α_Λ α_Λ̄`.
pub const DEFAULT_ALPHA_PRODUCT: f64 = 0.46;

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::input(format!("decay asymmetry must lie in [-1, 1], got {alpha}")))
    }
}
