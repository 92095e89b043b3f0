//! Round generation and the session transcript.

use std::io::Write;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::analysis::{security_report, sift_keys, SecurityReport};
use super::{Eavesdropper, EveDirection, ProtocolConfig};
use crate::error::Result;
use crate::streams;

/// One measured pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Round {
    pub a_choice: u8,
    pub b_choice: u8,
    pub a_out: i8,
    pub b_out: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct SessionTranscript {
    pub rounds: Vec<Round>,
}

impl SessionTranscript {
    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// CSV with header `round,a_choice,b_choice,a_out,b_out`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["round", "a_choice", "b_choice", "a_out", "b_out"])?;
        for (i, r) in self.rounds.iter().enumerate() {
            out.write_record([
                i.to_string(),
                r.a_choice.to_string(),
                r.b_choice.to_string(),
                r.a_out.to_string(),
                r.b_out.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SessionOutput {
    pub transcript: SessionTranscript,
    pub alice_key: Vec<u8>,
    pub bob_key: Vec<u8>,
    pub report: SecurityReport,
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sign(rng: &mut ChaCha8Rng, p_plus: f64) -> i8 {
    if rng.random::<f64>() < p_plus {
        1
    } else {
        -1
    }
}

fn isotropic(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = 2.0 * rng.random::<f64>() - 1.0;
    let phi: f64 = std::f64::consts::TAU * rng.random::<f64>();
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn one_round(cfg: &ProtocolConfig, rng: &mut ChaCha8Rng) -> Round {
    let a_choice = rng.random_range(0..3u8);
    let b_choice = rng.random_range(0..3u8);
    let a = &cfg.alice_settings[a_choice as usize];
    let b = &cfg.bob_settings[b_choice as usize];

    let eve_axis = match cfg.eve {
        Eavesdropper::None => None,
        Eavesdropper::InterceptResend { direction, fraction } => {
            let hit = fraction >= 1.0 || rng.random::<f64>() < fraction;
            hit.then(|| match direction {
                EveDirection::Fixed(e) => e,
                EveDirection::UniformRandom => isotropic(rng),
            })
        }
    };

    let (a_out, b_out) = match eve_axis {
        None => {
            // identical settings: exact anti-correlation, no rounding in a·b
            let ab = if a == b { 1.0 } else { dot(a, b) };
            let k = sign(rng, 0.5);
            let l = sign(rng, 0.5 * (1.0 - f64::from(k) * ab));
            (k, l)
        }
        Some(e) => {
            let s = f64::from(sign(rng, 0.5));
            let k = sign(rng, 0.5 * (1.0 + s * dot(a, &e)));
            let l = sign(rng, 0.5 * (1.0 - s * dot(b, &e)));
            (k, l)
        }
    };
    Round { a_choice, b_choice, a_out, b_out }
}

/// Runs a full session: generation, sifting and the security report.
pub fn run_session(cfg: &ProtocolConfig) -> Result<SessionOutput> {
    run_session_with_workers(cfg, None)
}

/// [`run_session`] on an explicit number of worker threads; the output does
/// not depend on it.
pub fn run_session_with_workers(cfg: &ProtocolConfig, workers: Option<usize>) -> Result<SessionOutput> {
    cfg.validate()?;
    let rounds = streams::generate(cfg.pair_count, cfg.seed, workers, |rng, _| one_round(cfg, rng));
    let transcript = SessionTranscript { rounds };
    let keys = sift_keys(&transcript, cfg);
    let report = security_report(&transcript, cfg, &keys);
    Ok(SessionOutput { transcript, alice_key: keys.alice, bob_key: keys.bob, report })
}
