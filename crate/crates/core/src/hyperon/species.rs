use serde::{Deserialize, Serialize};

use super::check_alpha;
use crate::error::{Error, Result};
use crate::quantum::{gellmann_basis, CMatrix, KrausChannel, C64};

/// Spin quantum number stored as `2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spin(pub u32);

impl Spin {
    pub const HALF: Spin = Spin(1);

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `2s + 1`.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// `s(2s + 1)`, the squared Bloch length of a pure state.
    pub fn pure_length_squared(self) -> f64 {
        self.value() * self.dim() as f64
    }
}

/// Decay parameters of one hyperon species.
///
/// `omega1`, `omega2` live in the `(2s+1)² − 1` dimensional Bloch space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperonSpecies {
    pub spin: Spin,
    pub alpha: f64,
    pub omega1: Vec<f64>,
    pub omega2: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl HyperonSpecies {
    pub fn new(spin: Spin, alpha: f64, omega1: Vec<f64>, omega2: Vec<f64>) -> Result<Self> {
        let h = HyperonSpecies { spin, alpha, omega1, omega2 };
        h.validate()?;
        Ok(h)
    }

    /// Spin-½ species measuring along `axis` (normalized here).
    pub fn spin_half(alpha: f64, axis: [f64; 3]) -> Result<Self> {
        let n = dot(&axis, &axis).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::input("decay axis must be a non-zero vector"));
        }
        Self::new(Spin::HALF, alpha, vec![0.0; 3], axis.iter().map(|x| x / n).collect())
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.spin.0 == 0 {
            return Err(Error::input("spin 0 has no spin measurement"));
        }
        let d = self.spin.dim();
        let len = d * d - 1;
        if self.omega1.len() != len || self.omega2.len() != len {
            return Err(Error::input(format!(
                "omega vectors need {len} components for spin {}",
                self.spin.value()
            )));
        }
        if dot(&self.omega1, &self.omega2).abs() > 1e-12 {
            return Err(Error::input("omega1 and omega2 must be orthogonal"));
        }
        let target = self.spin.pure_length_squared();
        for sign in [1.0, -1.0] {
            let v: Vec<f64> = self.omega1.iter().zip(&self.omega2).map(|(a, b)| a + sign * b).collect();
            if (dot(&v, &v) - target).abs() > 1e-10 {
                return Err(Error::input(format!(
                    "|omega1 ± omega2|² must equal s(2s+1) = {target}"
                )));
            }
        }
        if self.spin == Spin::HALF && self.omega1.iter().any(|x| x.abs() > 1e-12) {
            return Err(Error::input("for spin 1/2 omega1 must vanish"));
        }
        Ok(())
    }

    /// `ω± = (1 ± α)/2`.
    pub fn weights(&self) -> (f64, f64) {
        (0.5 * (1.0 + self.alpha), 0.5 * (1.0 - self.alpha))
    }

    /// `(ω₁ + ω₂, ω₁ − ω₂)`.
    pub fn directions(&self) -> (Vec<f64>, Vec<f64>) {
        let plus = self.omega1.iter().zip(&self.omega2).map(|(a, b)| a + b).collect();
        let minus = self.omega1.iter().zip(&self.omega2).map(|(a, b)| a - b).collect();
        (plus, minus)
    }
}

/// Projector with Bloch vector `v`, `(1/d)(1 + v·Γ)`; must be rank one.
fn bloch_projector(d: usize, v: &[f64]) -> Result<CMatrix> {
    let basis = gellmann_basis(d)?;
    let mut m = CMatrix::identity(d, d);
    for (g, &vi) in basis.iter().zip(v) {
        m += g * C64::from(vi);
    }
    m /= C64::from(d as f64);
    if (&m * &m - &m).norm() > 1e-9 {
        return Err(Error::input("omega1 ± omega2 is not the Bloch vector of a pure state"));
    }
    Ok(m)
}

/// `K± = √ω± Π_{ω₁±ω₂}`.
pub fn kraus_from_species(h: &HyperonSpecies) -> Result<KrausChannel> {
    h.validate()?;
    let d = h.spin.dim();
    let (wp, wm) = h.weights();
    let (plus, minus) = h.directions();
    let kp = bloch_projector(d, &plus)? * C64::from(wp.sqrt());
    let km = bloch_projector(d, &minus)? * C64::from(wm.sqrt());
    KrausChannel::new(vec![kp, km])
}
