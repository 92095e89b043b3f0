//! Bell-test physics for decaying particle systems.
//!
//! The crate covers four scenarios built on one small dense linear-algebra
//! layer ([`quantum`]):
//!
//! * [`kaon`]: neutral-kaon time evolution with decay and CP violation, and
//!   the joint probabilities of active strangeness measurements on the
//!   entangled pair.
//! * [`bell`]: correlation functions, the CHSH function, the local
//!   hidden-variable bound by enumeration, and a time-scan optimizer for the
//!   kaon CHSH value.
//! * [`hyperon`]: weak hyperon decay as an imperfect spin measurement, with
//!   Monte Carlo event generation and an entanglement-witness estimator.
//! * [`qkd`]: an entanglement-based key-distribution session whose security
//!   verdict is the estimated CHSH value.
//!
//! The [`cli`] module backs the `decaybell` binary.

pub mod bell;
pub mod cli;
pub mod error;
pub mod hyperon;
pub mod kaon;
pub mod qkd;
pub mod quantum;

pub(crate) mod numfmt;
pub(crate) mod streams;

pub use error::{Error, Result};
