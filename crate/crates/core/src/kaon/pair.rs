use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_time, FlavorState, KaonConstants};
use crate::bell::JointOutcomeTable;
use crate::error::{Error, Result};
use crate::quantum::tolerance;

/// Two-kaon state in the mass basis, `amplitudes[i][j]` multiplying
/// `|i⟩_left ⊗ |j⟩_right` with index 0 = `K_S`, 1 = `K_L`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KaonPairState {
    pub amplitudes: [[Complex64; 2]; 2],
    pub t_left: f64,
    pub t_right: f64,
}

impl KaonPairState {
    /// `⟨f_l, f_r|ψ⟩`.
    pub fn flavor_amplitude(&self, left: FlavorState, right: FlavorState, c: &KaonConstants) -> Complex64 {
        let (ls, ll) = left.mass_projections(c);
        let (rs, rl) = right.mass_projections(c);
        let pl = [ls, ll];
        let pr = [rs, rl];
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                acc += pl[i] * pr[j] * self.amplitudes[i][j];
            }
        }
        acc
    }

    pub fn flavor_probability(&self, left: FlavorState, right: FlavorState, c: &KaonConstants) -> f64 {
        self.flavor_amplitude(left, right, c).norm_sqr()
    }

    /// Probability that both kaons are still present.
    pub fn norm_squared(&self, c: &KaonConstants) -> f64 {
        FlavorState::ALL
            .iter()
            .flat_map(|&l| FlavorState::ALL.iter().map(move |&r| (l, r)))
            .map(|(l, r)| self.flavor_probability(l, r, c))
            .sum()
    }
}

/// Evolves `(|K⁰K̄⁰⟩ − |K̄⁰K⁰⟩)/√2` for proper times `t_left`, `t_right`.
pub fn evolve_pair(t_left: f64, t_right: f64, c: &KaonConstants) -> Result<KaonPairState> {
    check_time(t_left)?;
    check_time(t_right)?;
    let k = FlavorState::K0.mass_coefficients(c);
    let kb = FlavorState::K0bar.mass_coefficients(c);
    let k = [k.0, k.1];
    let kb = [kb.0, kb.1];
    let (ls, ll) = c.propagators(t_left);
    let (rs, rl) = c.propagators(t_right);
    let ul = [ls, ll];
    let ur = [rs, rl];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amplitudes = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            amplitudes[i][j] = (k[i] * kb[j] - kb[i] * k[j]) * h * ul[i] * ur[j];
        }
    }
    Ok(KaonPairState { amplitudes, t_left, t_right })
}

/// "Are you, at proper time `time`, in the state `target`, or not?"
///
/// "No" covers both the opposite flavour and a decay before `time`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ActiveQuestion {
    pub target: FlavorState,
    pub time: f64,
}

impl ActiveQuestion {
    pub fn new(target: FlavorState, time: f64) -> Result<Self> {
        check_time(time)?;
        Ok(ActiveQuestion { target, time })
    }
}

fn check_consistent(pair: &KaonPairState, ql: &ActiveQuestion, qr: &ActiveQuestion) -> Result<()> {
    if pair.t_left != ql.time || pair.t_right != qr.time {
        return Err(Error::input(format!(
            "pair evolved to ({}, {}) but questions asked at ({}, {})",
            pair.t_left, pair.t_right, ql.time, qr.time
        )));
    }
    check_time(ql.time)?;
    check_time(qr.time)
}

/// Left-side probability of finding flavour `f` at `t`, whatever happens on the right.
fn left_marginal(f: FlavorState, t: f64, c: &KaonConstants) -> Result<f64> {
    let p = evolve_pair(t, 0.0, c)?;
    Ok(FlavorState::ALL.iter().map(|&r| p.flavor_probability(f, r, c)).sum())
}

fn right_marginal(f: FlavorState, t: f64, c: &KaonConstants) -> Result<f64> {
    let p = evolve_pair(0.0, t, c)?;
    Ok(FlavorState::ALL.iter().map(|&l| p.flavor_probability(l, f, c)).sum())
}

fn clamp_probability(p: f64, what: &str) -> Result<f64> {
    if p < -tolerance() {
        return Err(Error::input(format!("{what} probability {p:e} is negative")));
    }
    Ok(p.max(0.0))
}

/// Joint yes/no table for two active strangeness questions.
///
/// Index 0 is "yes" and 1 is "no" on each side; no post-selection on
/// surviving pairs is done, so the four entries always sum to one.
pub fn active_strangeness_joint(
    pair: &KaonPairState,
    q_left: &ActiveQuestion,
    q_right: &ActiveQuestion,
    c: &KaonConstants,
) -> Result<JointOutcomeTable> {
    check_consistent(pair, q_left, q_right)?;
    let yy = pair.flavor_probability(q_left.target, q_right.target, c);
    let ml = left_marginal(q_left.target, q_left.time, c)?;
    let mr = right_marginal(q_right.target, q_right.time, c)?;
    let yn = clamp_probability(ml - yy, "yes/no")?;
    let ny = clamp_probability(mr - yy, "no/yes")?;
    let nn = clamp_probability(1.0 - yy - yn - ny, "no/no")?;
    JointOutcomeTable::new([[yy, yn], [ny, nn]])
}

/// Diagnostic three-outcome table: index 0 = asked flavour, 1 = opposite
/// flavour, 2 = decayed before the measurement time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThreeOutcomeTable {
    pub p: [[f64; 3]; 3],
}

impl ThreeOutcomeTable {
    pub fn total(&self) -> f64 {
        self.p.iter().flatten().sum()
    }

    /// Collapses outcomes 1 and 2 into "no".
    pub fn to_yes_no(&self) -> [[f64; 2]; 2] {
        let p = &self.p;
        [
            [p[0][0], p[0][1] + p[0][2]],
            [p[1][0] + p[2][0], p[1][1] + p[1][2] + p[2][1] + p[2][2]],
        ]
    }
}

pub fn active_strangeness_outcomes(
    pair: &KaonPairState,
    q_left: &ActiveQuestion,
    q_right: &ActiveQuestion,
    c: &KaonConstants,
) -> Result<ThreeOutcomeTable> {
    check_consistent(pair, q_left, q_right)?;
    let fl = [q_left.target, q_left.target.opposite()];
    let fr = [q_right.target, q_right.target.opposite()];
    let mut p = [[0.0; 3]; 3];
    for a in 0..2 {
        for b in 0..2 {
            p[a][b] = pair.flavor_probability(fl[a], fr[b], c);
        }
    }
    for a in 0..2 {
        let m = left_marginal(fl[a], q_left.time, c)?;
        p[a][2] = clamp_probability(m - p[a][0] - p[a][1], "flavour/decayed")?;
    }
    for b in 0..2 {
        let m = right_marginal(fr[b], q_right.time, c)?;
        p[2][b] = clamp_probability(m - p[0][b] - p[1][b], "decayed/flavour")?;
    }
    let rest: f64 = p.iter().flatten().sum();
    p[2][2] = clamp_probability(1.0 - rest, "decayed/decayed")?;
    Ok(ThreeOutcomeTable { p })
}
