use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::numfmt::f17;

const PHYSICAL: &str = include_str!("../../presets/physical.json");
const CP_CONSERVING: &str = include_str!("../../presets/cp-conserving.json");
const NO_DECAY: &str = include_str!("../../presets/no-decay.json");

/// On-disk layout of a constants file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsFile {
    #[serde(rename = "gamma_S")]
    pub gamma_s: f64,
    #[serde(rename = "gamma_L")]
    pub gamma_l: f64,
    pub delta_m: f64,
    pub epsilon_re: f64,
    pub epsilon_im: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Neutral-kaon parameters in natural units (ħ = 1).
///
/// `m_s` and `m_l` only ever enter through their difference; files store
/// `delta_m` and loading sets `m_s = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct KaonConstants {
    pub gamma_s: f64,
    pub gamma_l: f64,
    pub m_s: f64,
    pub m_l: f64,
    pub epsilon: Complex64,
}

impl KaonConstants {
    /// Builds and validates a constants record.
    ///
    /// Requires `gamma_s ≥ gamma_l ≥ 0` and a positive semidefinite decay
    /// matrix, `Γ_S Γ_L ≥ δ²(Γ̄² + Δm²)` with `δ = ⟨K_S|K_L⟩`. The second
    /// condition keeps every flavour probability table non-negative; it
    /// fails, for instance, for `Γ = 0` with `ε ≠ 0`.
    pub fn new(gamma_s: f64, gamma_l: f64, delta_m: f64, epsilon: Complex64) -> Result<Self> {
        let c = KaonConstants { gamma_s, gamma_l, m_s: 0.0, m_l: delta_m, epsilon };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.gamma_s, self.gamma_l, self.m_s, self.m_l, self.epsilon.re, self.epsilon.im];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("kaon constants must be finite".into()));
        }
        if !(self.gamma_s >= self.gamma_l && self.gamma_l >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "need gamma_S >= gamma_L >= 0, got {} and {}",
                self.gamma_s, self.gamma_l
            )));
        }
        if self.delta_m() < 0.0 {
            return Err(Error::InvalidConfig("delta_m = m_L - m_S must be >= 0".into()));
        }
        let d = self.overlap();
        let gbar = 0.5 * (self.gamma_s + self.gamma_l);
        let lhs = self.gamma_s * self.gamma_l;
        let rhs = d * d * (gbar * gbar + self.delta_m().powi(2));
        if lhs < rhs * (1.0 - 1e-12) {
            return Err(Error::InvalidConfig(format!(
                "decay matrix not positive: gamma_S*gamma_L = {lhs:e} < {rhs:e}; \
                 epsilon is inconsistent with the widths"
            )));
        }
        Ok(())
    }

    pub fn delta_m(&self) -> f64 {
        self.m_l - self.m_s
    }

    /// `⟨K_S|K_L⟩ = 2 Re ε / (1 + |ε|²)`.
    pub fn overlap(&self) -> f64 {
        super::mass_eigenstate_overlap(self.epsilon)
    }

    pub fn from_file_record(f: &ConstantsFile) -> Result<Self> {
        Self::new(f.gamma_s, f.gamma_l, f.delta_m, Complex64::new(f.epsilon_re, f.epsilon_im))
    }

    pub fn to_file_record(&self) -> ConstantsFile {
        ConstantsFile {
            gamma_s: self.gamma_s,
            gamma_l: self.gamma_l,
            delta_m: self.delta_m(),
            epsilon_re: self.epsilon.re,
            epsilon_im: self.epsilon.im,
            note: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rec: ConstantsFile = serde_json::from_str(text)?;
        Self::from_file_record(&rec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Bundled particle-data preset (external input, time in seconds).
    pub fn physical() -> Self {
        Self::from_json(PHYSICAL).expect("bundled physical preset is valid")
    }

    /// Physical widths and mass difference with `ε = 0`.
    pub fn cp_conserving() -> Self {
        Self::from_json(CP_CONSERVING).expect("bundled cp-conserving preset is valid")
    }

    /// `Γ_S = Γ_L = 0`, `ε = 0`: undamped strangeness oscillation.
    pub fn no_decay() -> Self {
        Self::from_json(NO_DECAY).expect("bundled no-decay preset is valid")
    }

    /// Raw JSON of a bundled preset by name.
    pub fn preset_json(name: &str) -> Option<&'static str> {
        match name {
            "physical" => Some(PHYSICAL),
            "cp-conserving" => Some(CP_CONSERVING),
            "no-decay" => Some(NO_DECAY),
            _ => None,
        }
    }

    /// SHA-256 over the five numeric fields at 17 significant digits.
    pub fn hash(&self) -> String {
        let canon = format!(
            "gamma_S={};gamma_L={};delta_m={};epsilon_re={};epsilon_im={}",
            f17(self.gamma_s),
            f17(self.gamma_l),
            f17(self.delta_m()),
            f17(self.epsilon.re),
            f17(self.epsilon.im)
        );
        hex::encode(Sha256::digest(canon.as_bytes()))
    }

    pub(crate) fn lambda_s(&self) -> Complex64 {
        Complex64::new(self.m_s, -0.5 * self.gamma_s)
    }

    pub(crate) fn lambda_l(&self) -> Complex64 {
        Complex64::new(self.m_l, -0.5 * self.gamma_l)
    }

    /// `(e^{−iλ_S t}, e^{−iλ_L t})`.
    pub(crate) fn propagators(&self, t: f64) -> (Complex64, Complex64) {
        let i = Complex64::i();
        ((-i * self.lambda_s() * t).exp(), (-i * self.lambda_l() * t).exp())
    }

    /// `N = 1/√(2(1 + |ε|²))`.
    pub(crate) fn normalization(&self) -> f64 {
        1.0 / (2.0 * (1.0 + self.epsilon.norm_sqr())).sqrt()
    }
}
