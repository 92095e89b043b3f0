//! Entanglement-based key distribution with three settings per party.
//!
//! Both parties measure spin singlet halves along one of three directions
//! chosen uniformly per round. Rounds where the two directions coincide give
//! perfectly anti-correlated outcomes and become key bits; the other rounds
//! are announced in public and four of their setting pairs estimate the CHSH
//! value, which is the security verdict.
//!
//! ```
//! use decaybell::qkd::{run_session, ProtocolConfig};
//!
//! let cfg = ProtocolConfig::new(20_000, 7);
//! let out = run_session(&cfg).unwrap();
//! assert_eq!(out.alice_key, out.bob_key);
//! assert!(out.report.secure);
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bell::planar_direction;
use crate::error::{Error, Result};

mod analysis;
mod session;

pub use analysis::{
    audit, estimate_chsh, security_report, sift_keys, ChshEstimate, PartyRecord,
    PublicAnnouncement, RevealedRound, SecurityReport, SessionReport, SiftedKeys,
};
pub use session::{run_session, run_session_with_workers, Round, SessionOutput, SessionTranscript};

/// How the eavesdropper picks the axis she measures along.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EveDirection {
    Fixed([f64; 3]),
    UniformRandom,
}

/// Eavesdropper acting between source and detectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Eavesdropper {
    None,
    /// Measures the pair along one axis, then resends the two product states
    /// matching her result. `fraction` is the per-round interception
    /// probability.
    InterceptResend { direction: EveDirection, fraction: f64 },
}

impl Eavesdropper {
    pub fn intercept_resend(direction: EveDirection) -> Self {
        Eavesdropper::InterceptResend { direction, fraction: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if let Eavesdropper::InterceptResend { direction, fraction } = self {
            if !(0.0..=1.0).contains(fraction) {
                return Err(Error::InvalidConfig(format!("interception fraction {fraction} outside [0, 1]")));
            }
            if let EveDirection::Fixed(v) = direction {
                check_unit(v, "eavesdropper direction")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Eavesdropper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eavesdropper::None => write!(f, "none"),
            Eavesdropper::InterceptResend { direction, fraction } => {
                match direction {
                    EveDirection::UniformRandom => write!(f, "uniform")?,
                    EveDirection::Fixed([x, y, z]) => write!(f, "fixed:{x},{y},{z}")?,
                }
                if *fraction != 1.0 {
                    write!(f, "@{fraction}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `none`, `uniform`, `fixed:x,y,z`, each intercepting optionally
/// suffixed by `@fraction`.
impl FromStr for Eavesdropper {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("none") {
            return Ok(Eavesdropper::None);
        }
        let (body, fraction) = match s.split_once('@') {
            Some((b, f)) => (
                b,
                f.parse::<f64>().map_err(|_| Error::InvalidConfig(format!("bad interception fraction '{f}'")))?,
            ),
            None => (s, 1.0),
        };
        let direction = if body.eq_ignore_ascii_case("uniform") {
            EveDirection::UniformRandom
        } else if let Some(rest) = body.strip_prefix("fixed:") {
            let parts: Vec<f64> = rest
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidConfig(format!("bad direction '{rest}'")))?;
            let v: [f64; 3] = parts
                .try_into()
                .map_err(|_| Error::InvalidConfig("fixed direction needs three components".into()))?;
            EveDirection::Fixed(v)
        } else {
            return Err(Error::InvalidConfig(format!(
                "unknown eavesdropper '{s}' (expected none, uniform or fixed:x,y,z)"
            )));
        };
        let eve = Eavesdropper::InterceptResend { direction, fraction };
        eve.validate()?;
        Ok(eve)
    }
}

fn check_unit(v: &[f64; 3], what: &str) -> Result<()> {
    let n2: f64 = v.iter().map(|x| x * x).sum();
    if !v.iter().all(|x| x.is_finite()) || (n2.sqrt() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidConfig(format!("{what} {v:?} is not a unit vector")));
    }
    Ok(())
}

/// Session parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub pair_count: usize,
    pub alice_settings: [[f64; 3]; 3],
    pub bob_settings: [[f64; 3]; 3],
    pub seed: u64,
    pub eve: Eavesdropper,
    /// Alice's setting indices for `n, n′`.
    pub chsh_alice: [usize; 2],
    /// Bob's setting indices for `m, m′`.
    pub chsh_bob: [usize; 2],
}

impl ProtocolConfig {
    /// Default planar settings: Alice at 0°, 45°, 90° and Bob at 45°, 90°,
    /// 135° from `+z`, no eavesdropper.
    pub fn new(pair_count: usize, seed: u64) -> Self {
        let deg = |a: f64| planar_direction(a.to_radians());
        ProtocolConfig {
            pair_count,
            alice_settings: [deg(0.0), deg(45.0), deg(90.0)],
            bob_settings: [deg(45.0), deg(90.0), deg(135.0)],
            seed,
            eve: Eavesdropper::None,
            chsh_alice: [0, 2],
            chsh_bob: [0, 2],
        }
    }

    pub fn with_eve(mut self, eve: Eavesdropper) -> Self {
        self.eve = eve;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.pair_count == 0 {
            return Err(Error::InvalidConfig("pair_count must be at least 1".into()));
        }
        for v in self.alice_settings.iter().chain(&self.bob_settings) {
            check_unit(v, "setting")?;
        }
        if !self.alice_settings.iter().any(|a| self.bob_settings.contains(a)) {
            return Err(Error::InvalidConfig("no Alice setting equals a Bob setting".into()));
        }
        if self.chsh_alice.iter().chain(&self.chsh_bob).any(|&i| i > 2) {
            return Err(Error::InvalidConfig("CHSH setting index out of range".into()));
        }
        if self.chsh_alice[0] == self.chsh_alice[1] || self.chsh_bob[0] == self.chsh_bob[1] {
            return Err(Error::InvalidConfig("CHSH needs two distinct settings per side".into()));
        }
        for (i, j) in self.chsh_pairs() {
            if self.matched(i, j) {
                return Err(Error::InvalidConfig(format!(
                    "CHSH pair ({i}, {j}) uses equal settings, which are never announced"
                )));
            }
        }
        self.eve.validate()
    }

    /// `(alice index, bob index)` for `(n,m), (n,m′), (n′,m), (n′,m′)`.
    pub fn chsh_pairs(&self) -> [(usize, usize); 4] {
        let [a, a2] = self.chsh_alice;
        let [b, b2] = self.chsh_bob;
        [(a, b), (a, b2), (a2, b), (a2, b2)]
    }

    /// True when Alice's setting `i` and Bob's setting `j` are identical.
    pub fn matched(&self, i: usize, j: usize) -> bool {
        self.alice_settings[i] == self.bob_settings[j]
    }

    /// Probability that a round lands on a matched pair.
    pub fn matched_fraction(&self) -> f64 {
        let n = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|&(i, j)| self.matched(i, j)).count();
        n as f64 / 9.0
    }
}
