use serde::Serialize;

use crate::error::{Error, Result};
use crate::kaon::{active_strangeness_joint, evolve_pair, ActiveQuestion, KaonConstants};
use crate::quantum::{expectation, spin_along, tolerance, DensityOperator, Tensor};

/// Largest |S| reachable with local resources and shared randomness.
pub const CLASSICAL_BOUND: f64 = 2.0;
/// Tsirelson bound `2√2`.
pub const QUANTUM_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;

/// Joint probabilities `P^{kl}` with index 0 ↔ outcome `+1`, 1 ↔ `−1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JointOutcomeTable {
    pub p: [[f64; 2]; 2],
}

impl JointOutcomeTable {
    pub fn new(p: [[f64; 2]; 2]) -> Result<Self> {
        let tol = tolerance();
        if p.iter().flatten().any(|x| !x.is_finite() || *x < -tol) {
            return Err(Error::input(format!("joint table has invalid entries {p:?}")));
        }
        let sum: f64 = p.iter().flatten().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::input(format!("joint table sums to {sum}, not 1")));
        }
        Ok(JointOutcomeTable { p })
    }

    /// Outcome value for a table index.
    pub fn outcome(index: usize) -> f64 {
        if index == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// `E = Σ_{k,l} k·l·P^{kl}`.
pub fn correlation_from_table(tbl: &JointOutcomeTable) -> f64 {
    let mut e = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            e += JointOutcomeTable::outcome(a) * JointOutcomeTable::outcome(b) * tbl.p[a][b];
        }
    }
    e.clamp(-1.0, 1.0)
}

/// `S = E(n,m) − E(n,m′) + E(n′,m) + E(n′,m′)`.
pub fn chsh_value(e_nm: f64, e_nm2: f64, e_n2m: f64, e_n2m2: f64) -> Result<f64> {
    let es = [e_nm, e_nm2, e_n2m, e_n2m2];
    if es.iter().any(|e| !e.is_finite() || e.abs() > 1.0 + tolerance()) {
        return Err(Error::input(format!("correlations must lie in [-1, 1], got {es:?}")));
    }
    Ok(e_nm - e_nm2 + e_n2m + e_n2m2)
}

/// How "yes" and "no" of an active question map to ±1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum OutcomeMapping {
    #[default]
    YesPlus,
    /// Flips the sign of every correlation.
    YesMinus,
}

impl OutcomeMapping {
    fn sign(self) -> f64 {
        match self {
            OutcomeMapping::YesPlus => 1.0,
            OutcomeMapping::YesMinus => -1.0,
        }
    }
}

/// One side's choice of measurement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum MeasurementSetting {
    /// Spin along a unit vector.
    Spin([f64; 3]),
    /// Active strangeness question at a proper time.
    Kaon(ActiveQuestion),
}

/// Unit vector at `angle` (radians) from `+z` towards `+x`.
pub fn planar_direction(angle: f64) -> [f64; 3] {
    [angle.sin(), 0.0, angle.cos()]
}

/// Settings in the order `(n, m, n′, m′)`: Alice uses `n, n′`, Bob `m, m′`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChshConfig {
    pub settings: [MeasurementSetting; 4],
}

impl ChshConfig {
    pub fn new(settings: [MeasurementSetting; 4]) -> Result<Self> {
        let spin = settings.iter().filter(|s| matches!(s, MeasurementSetting::Spin(_))).count();
        if spin != 0 && spin != 4 {
            return Err(Error::input("CHSH settings must all be of one kind"));
        }
        for s in &settings {
            match s {
                MeasurementSetting::Spin(v) => {
                    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if (n - 1.0).abs() > 1e-12 {
                        return Err(Error::input(format!("spin direction not normalized: |v| = {n}")));
                    }
                }
                MeasurementSetting::Kaon(q) => {
                    ActiveQuestion::new(q.target, q.time)?;
                }
            }
        }
        Ok(ChshConfig { settings })
    }

    /// Spin settings from in-plane angles `(n, m, n′, m′)` in radians.
    pub fn planar(angles: [f64; 4]) -> Self {
        ChshConfig { settings: angles.map(|a| MeasurementSetting::Spin(planar_direction(a))) }
    }

    /// Alice at 0° and 90°, Bob at 45° and 135°: `S = −2√2` on the singlet.
    pub fn optimal_planar() -> Self {
        use std::f64::consts::FRAC_PI_4;
        Self::planar([0.0, FRAC_PI_4, 2.0 * FRAC_PI_4, 3.0 * FRAC_PI_4])
    }

    pub fn kaon(questions: [ActiveQuestion; 4]) -> Result<Self> {
        Self::new(questions.map(MeasurementSetting::Kaon))
    }

    /// The four (Alice, Bob) index pairs in CHSH order.
    pub(crate) const PAIRS: [(usize, usize); 4] = [(0, 1), (0, 3), (2, 1), (2, 3)];

    fn spin(&self, i: usize) -> Result<[f64; 3]> {
        match self.settings[i] {
            MeasurementSetting::Spin(v) => Ok(v),
            MeasurementSetting::Kaon(_) => Err(Error::input("expected spin settings")),
        }
    }

    fn question(&self, i: usize) -> Result<ActiveQuestion> {
        match self.settings[i] {
            MeasurementSetting::Kaon(q) => Ok(q),
            MeasurementSetting::Spin(_) => Err(Error::input("expected kaon questions")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChshResult {
    pub s_value: f64,
    pub correlations: [f64; 4],
    pub settings: ChshConfig,
}

impl ChshResult {
    pub const CLASSICAL_BOUND: f64 = CLASSICAL_BOUND;
    pub const QUANTUM_BOUND: f64 = QUANTUM_BOUND;

    pub fn violates_classical_bound(&self) -> bool {
        self.s_value.abs() > CLASSICAL_BOUND
    }
}

fn assemble(correlations: [f64; 4], settings: ChshConfig) -> Result<ChshResult> {
    let [a, b, c, d] = correlations;
    Ok(ChshResult { s_value: chsh_value(a, b, c, d)?, correlations, settings })
}

/// CHSH value of a two-qubit state for spin settings.
pub fn quantum_chsh(rho: &DensityOperator, cfg: &ChshConfig) -> Result<ChshResult> {
    if rho.dim() != 4 {
        return Err(Error::input(format!("quantum_chsh needs a two-qubit state, got dim {}", rho.dim())));
    }
    let mut es = [0.0; 4];
    for (k, &(a, b)) in ChshConfig::PAIRS.iter().enumerate() {
        let o = spin_along(cfg.spin(a)?)?.tensor(&spin_along(cfg.spin(b)?)?);
        es[k] = expectation(&o, rho)?;
    }
    assemble(es, *cfg)
}

/// Correlation of two active strangeness questions on the kaon pair.
pub fn kaon_correlation(
    left: &ActiveQuestion,
    right: &ActiveQuestion,
    c: &KaonConstants,
    mapping: OutcomeMapping,
) -> Result<f64> {
    let pair = evolve_pair(left.time, right.time, c)?;
    let tbl = active_strangeness_joint(&pair, left, right, c)?;
    Ok(mapping.sign() * correlation_from_table(&tbl))
}

/// CHSH value of the kaon pair for four active questions.
pub fn kaon_chsh(cfg: &ChshConfig, c: &KaonConstants, mapping: OutcomeMapping) -> Result<ChshResult> {
    let mut es = [0.0; 4];
    for (k, &(a, b)) in ChshConfig::PAIRS.iter().enumerate() {
        es[k] = kaon_correlation(&cfg.question(a)?, &cfg.question(b)?, c, mapping)?;
    }
    assemble(es, *cfg)
}

/// Deterministic local strategy: a fixed ±1 answer per setting and side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalStrategy {
    /// Alice's answers for `n`, `n′`.
    pub alice: [i8; 2],
    /// Bob's answers for `m`, `m′`.
    pub bob: [i8; 2],
}

impl LocalStrategy {
    /// All 16 strategies.
    pub fn all() -> Vec<LocalStrategy> {
        (0..16u8)
            .map(|bits| {
                let s = |k: u8| if bits >> k & 1 == 0 { 1 } else { -1 };
                LocalStrategy { alice: [s(0), s(1)], bob: [s(2), s(3)] }
            })
            .collect()
    }

    /// Correlations in CHSH order; each is ±1.
    pub fn correlations(&self) -> [f64; 4] {
        let [a, a2] = self.alice.map(f64::from);
        let [b, b2] = self.bob.map(f64::from);
        [a * b, a * b2, a2 * b, a2 * b2]
    }

    pub fn chsh(&self) -> f64 {
        let [e1, e2, e3, e4] = self.correlations();
        e1 - e2 + e3 + e4
    }
}

/// `(min, max)` of `S` over all deterministic local strategies.
///
/// The settings only label which answer each side gives, so the result does
/// not depend on them.
pub fn lhv_extremes(_settings: &ChshConfig) -> (f64, f64) {
    LocalStrategy::all()
        .iter()
        .map(LocalStrategy::chsh)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| (lo.min(s), hi.max(s)))
}

/// Maximum of `S` over the 16 deterministic local strategies.
pub fn lhv_brute_force_bound(settings: &ChshConfig) -> f64 {
    lhv_extremes(settings).1
}
