//! Sifting, CHSH estimation and the security verdict.

use serde::Serialize;

use super::session::SessionTranscript;
use super::{Eavesdropper, ProtocolConfig};
use crate::bell::CLASSICAL_BOUND;
use crate::error::{Error, Result};

/// Sifted keys and the transcript rounds they came from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SiftedKeys {
    pub alice: Vec<u8>,
    pub bob: Vec<u8>,
    pub matched_indices: Vec<usize>,
}

fn alice_bit(out: i8) -> u8 {
    u8::from(out < 0)
}

// inverted: Bob's outcome is opposite to Alice's on matched settings
fn bob_bit(out: i8) -> u8 {
    u8::from(out > 0)
}

/// Keeps rounds with identical settings. Alice maps `+1 → 0`, `−1 → 1`; Bob
/// the reverse.
pub fn sift_keys(transcript: &SessionTranscript, cfg: &ProtocolConfig) -> SiftedKeys {
    let mut keys = SiftedKeys::default();
    for (i, r) in transcript.rounds.iter().enumerate() {
        if cfg.matched(r.a_choice as usize, r.b_choice as usize) {
            keys.alice.push(alice_bit(r.a_out));
            keys.bob.push(bob_bit(r.b_out));
            keys.matched_indices.push(i);
        }
    }
    keys
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChshEstimate {
    /// Signed `S` from the sample correlations.
    pub s_value: f64,
    /// `|S|`.
    pub s_estimate: f64,
    pub s_stderr: f64,
    pub correlations: [f64; 4],
    pub counts: [usize; 4],
}

fn chsh_from_outcomes<I>(rounds: I, cfg: &ProtocolConfig) -> Result<ChshEstimate>
where
    I: IntoIterator<Item = (u8, u8, i8, i8)>,
{
    let pairs = cfg.chsh_pairs();
    let mut sums = [0i64; 4];
    let mut counts = [0usize; 4];
    for (ac, bc, ao, bo) in rounds {
        if let Some(k) = pairs.iter().position(|&p| p == (ac as usize, bc as usize)) {
            sums[k] += i64::from(ao) * i64::from(bo);
            counts[k] += 1;
        }
    }
    if let Some(k) = counts.iter().position(|&n| n == 0) {
        let (i, j) = pairs[k];
        return Err(Error::InsufficientData(format!("no rounds with settings ({i}, {j})")));
    }
    let correlations: [f64; 4] = std::array::from_fn(|k| sums[k] as f64 / counts[k] as f64);
    let var: f64 = (0..4).map(|k| (1.0 - correlations[k].powi(2)) / counts[k] as f64).sum();
    let [e1, e2, e3, e4] = correlations;
    let s = e1 - e2 + e3 + e4;
    Ok(ChshEstimate { s_value: s, s_estimate: s.abs(), s_stderr: var.sqrt(), correlations, counts })
}

/// Sample-mean correlations for the four designated setting pairs combined
/// into `S`, with the standard error of each mean `√((1 − Ē²)/n)` added in
/// quadrature.
pub fn estimate_chsh(transcript: &SessionTranscript, cfg: &ProtocolConfig) -> Result<ChshEstimate> {
    chsh_from_outcomes(transcript.rounds.iter().map(|r| (r.a_choice, r.b_choice, r.a_out, r.b_out)), cfg)
}

/// Verdict of one session. CHSH fields are `None` when some setting pair was
/// never drawn, `qber` is `None` for an empty key.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SecurityReport {
    pub s_estimate: Option<f64>,
    pub s_stderr: Option<f64>,
    pub qber: Option<f64>,
    pub sifted_length: usize,
    /// `s_estimate − 3·s_stderr > 2`.
    pub secure: bool,
}

fn qber(alice: &[u8], bob: &[u8]) -> Option<f64> {
    if alice.is_empty() {
        return None;
    }
    let errors = alice.iter().zip(bob).filter(|(a, b)| a != b).count();
    Some(errors as f64 / alice.len() as f64)
}

fn assemble(chsh: Option<ChshEstimate>, alice: &[u8], bob: &[u8]) -> SecurityReport {
    let s_estimate = chsh.map(|c| c.s_estimate);
    let s_stderr = chsh.map(|c| c.s_stderr);
    let secure = chsh.is_some_and(|c| c.s_estimate - 3.0 * c.s_stderr > CLASSICAL_BOUND);
    SecurityReport { s_estimate, s_stderr, qber: qber(alice, bob), sifted_length: alice.len(), secure }
}

pub fn security_report(transcript: &SessionTranscript, cfg: &ProtocolConfig, keys: &SiftedKeys) -> SecurityReport {
    assemble(estimate_chsh(transcript, cfg).ok(), &keys.alice, &keys.bob)
}

/// What one party holds privately: its choices and its own outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartyRecord {
    pub choices: Vec<u8>,
    pub outcomes: Vec<i8>,
}

impl SessionTranscript {
    pub fn alice_record(&self) -> PartyRecord {
        PartyRecord {
            choices: self.rounds.iter().map(|r| r.a_choice).collect(),
            outcomes: self.rounds.iter().map(|r| r.a_out).collect(),
        }
    }

    pub fn bob_record(&self) -> PartyRecord {
        PartyRecord {
            choices: self.rounds.iter().map(|r| r.b_choice).collect(),
            outcomes: self.rounds.iter().map(|r| r.b_out).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RevealedRound {
    pub round: usize,
    pub a_out: i8,
    pub b_out: i8,
}

/// Everything said over the public channel: all choices, and outcomes of
/// mismatched rounds only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PublicAnnouncement {
    pub a_choices: Vec<u8>,
    pub b_choices: Vec<u8>,
    pub revealed: Vec<RevealedRound>,
}

impl PublicAnnouncement {
    pub fn announce(cfg: &ProtocolConfig, alice: &PartyRecord, bob: &PartyRecord) -> Result<Self> {
        check_record(alice, bob.choices.len())?;
        check_record(bob, alice.choices.len())?;
        let revealed = (0..alice.choices.len())
            .filter(|&i| !cfg.matched(alice.choices[i] as usize, bob.choices[i] as usize))
            .map(|i| RevealedRound { round: i, a_out: alice.outcomes[i], b_out: bob.outcomes[i] })
            .collect();
        Ok(PublicAnnouncement { a_choices: alice.choices.clone(), b_choices: bob.choices.clone(), revealed })
    }
}

fn check_record(p: &PartyRecord, other_len: usize) -> Result<()> {
    if p.choices.len() != p.outcomes.len() || p.choices.len() != other_len {
        return Err(Error::input("party records have inconsistent lengths"));
    }
    Ok(())
}

/// Party-local sifting: public choices plus the party's own outcomes.
fn local_key(cfg: &ProtocolConfig, public: &PublicAnnouncement, own: &PartyRecord, bit: fn(i8) -> u8) -> Vec<u8> {
    (0..public.a_choices.len())
        .filter(|&i| cfg.matched(public.a_choices[i] as usize, public.b_choices[i] as usize))
        .map(|i| bit(own.outcomes[i]))
        .collect()
}

/// Recomputes the security report from the public record and each party's
/// own data. The CHSH estimate only sees announced outcomes, each key only
/// its owner's outcomes; the final key comparison gives the QBER.
pub fn audit(
    cfg: &ProtocolConfig,
    public: &PublicAnnouncement,
    alice: &PartyRecord,
    bob: &PartyRecord,
) -> Result<SecurityReport> {
    cfg.validate()?;
    let n = public.a_choices.len();
    if public.b_choices.len() != n {
        return Err(Error::input("announced choice lists differ in length"));
    }
    check_record(alice, n)?;
    check_record(bob, n)?;
    if alice.choices != public.a_choices || bob.choices != public.b_choices {
        return Err(Error::input("private choices disagree with the announcement"));
    }
    for r in &public.revealed {
        if r.round >= n || cfg.matched(public.a_choices[r.round] as usize, public.b_choices[r.round] as usize) {
            return Err(Error::input(format!("round {} must not be revealed", r.round)));
        }
    }
    let chsh = chsh_from_outcomes(
        public.revealed.iter().map(|r| (public.a_choices[r.round], public.b_choices[r.round], r.a_out, r.b_out)),
        cfg,
    )
    .ok();
    let alice_key = local_key(cfg, public, alice, alice_bit);
    let bob_key = local_key(cfg, public, bob, bob_bit);
    Ok(assemble(chsh, &alice_key, &bob_key))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SettingsRecord {
    pub alice: [[f64; 3]; 3],
    pub bob: [[f64; 3]; 3],
}

/// JSON session report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SessionReport {
    pub n_pairs: usize,
    pub seed: u64,
    pub settings: SettingsRecord,
    pub eve_model: Eavesdropper,
    pub s_estimate: Option<f64>,
    pub s_stderr: Option<f64>,
    pub qber: Option<f64>,
    pub sifted_length: usize,
    pub secure: bool,
}

impl SessionReport {
    pub fn new(cfg: &ProtocolConfig, report: &SecurityReport) -> Self {
        SessionReport {
            n_pairs: cfg.pair_count,
            seed: cfg.seed,
            settings: SettingsRecord { alice: cfg.alice_settings, bob: cfg.bob_settings },
            eve_model: cfg.eve,
            s_estimate: report.s_estimate,
            s_stderr: report.s_stderr,
            qber: report.qber,
            sifted_length: report.sifted_length,
            secure: report.secure,
        }
    }
}
