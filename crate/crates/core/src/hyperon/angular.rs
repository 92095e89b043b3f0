use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{check_alpha, kraus_from_species, HyperonSpecies, Spin};
use crate::error::{Error, Result};
use crate::quantum::{apply_channel, tolerance, DensityOperator, Tensor};

const FOUR_PI: f64 = 4.0 * PI;

/// Daughter momentum direction in spherical angles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayDirection {
    pub theta: f64,
    pub phi: f64,
}

impl DecayDirection {
    /// `theta ∈ [0, π]`, `phi ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(theta.is_finite() && (0.0..=PI).contains(&theta)) {
            return Err(Error::input(format!("theta {theta} outside [0, π]")));
        }
        if !(phi.is_finite() && (0.0..TAU).contains(&phi)) {
            return Err(Error::input(format!("phi {phi} outside [0, 2π)")));
        }
        Ok(DecayDirection { theta, phi })
    }

    /// Angles of a non-zero vector.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::input("direction vector must be non-zero"));
        }
        let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
        let mut phi = v[1].atan2(v[0]);
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi = 0.0;
        }
        Self::new(theta, phi)
    }

    /// `(sin θ cos φ, sin θ sin φ, cos θ)`.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

fn spin_half_only(h: &HyperonSpecies) -> Result<()> {
    if h.spin != Spin::HALF {
        return Err(Error::Unsupported(format!(
            "angular distributions are implemented for spin 1/2 only, got s = {}",
            h.spin.value()
        )));
    }
    Ok(())
}

/// Solid-angle density of the daughter direction `dir` for a hyperon in
/// spin state `rho_spin`.
///
/// The decay channel of `h` is re-oriented with `ω₂` along `dir` and the
/// surviving trace is scaled by `(2s+1)/4π`; for spin ½ this is
/// `(1 + α s·n)/4π`, with `s` the Bloch vector of `rho_spin`.
pub fn single_angular_pdf(rho_spin: &DensityOperator, h: &HyperonSpecies, dir: &DecayDirection) -> Result<f64> {
    h.validate()?;
    spin_half_only(h)?;
    if rho_spin.dim() != h.spin.dim() {
        return Err(Error::input(format!(
            "spin state dim {} does not match spin {}",
            rho_spin.dim(),
            h.spin.value()
        )));
    }
    if (rho_spin.trace() - 1.0).abs() > tolerance() {
        return Err(Error::input("spin state must be normalized"));
    }
    let oriented = HyperonSpecies::spin_half(h.alpha, dir.unit_vector())?;
    let out = apply_channel(&kraus_from_species(&oriented)?, rho_spin)?;
    Ok(out.trace() * h.spin.dim() as f64 / FOUR_PI)
}

/// `p(n, m) = (1 − α_Λ α_Λ̄ n·m) / (4π)²` for a singlet-produced pair.
pub fn joint_angular_pdf(
    alpha_l: f64,
    alpha_lbar: f64,
    n_l: &DecayDirection,
    n_lbar: &DecayDirection,
) -> Result<f64> {
    check_alpha(alpha_l)?;
    check_alpha(alpha_lbar)?;
    let a = n_l.unit_vector();
    let b = n_lbar.unit_vector();
    let cos = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    Ok((1.0 - alpha_l * alpha_lbar * cos) / (FOUR_PI * FOUR_PI))
}

/// Joint daughter-direction density for an arbitrary two-qubit spin state,
/// from the tensor product of the two decay channels.
pub fn joint_angular_pdf_from_state(
    rho: &DensityOperator,
    alpha_l: f64,
    alpha_lbar: f64,
    n_l: &DecayDirection,
    n_lbar: &DecayDirection,
) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::input("joint angular distribution needs a two-qubit spin state"));
    }
    let kl = kraus_from_species(&HyperonSpecies::spin_half(alpha_l, n_l.unit_vector())?)?;
    let kb = kraus_from_species(&HyperonSpecies::spin_half(alpha_lbar, n_lbar.unit_vector())?)?;
    let out = apply_channel(&kl.tensor(&kb), rho)?;
    Ok(out.trace() * 4.0 / (FOUR_PI * FOUR_PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::StateVector;

    fn dir(theta: f64, phi: f64) -> DecayDirection {
        DecayDirection::new(theta, phi).unwrap()
    }

    #[test]
    fn mixed_state_is_isotropic() {
        let h = HyperonSpecies::spin_half(0.75, [0.0, 0.0, 1.0]).unwrap();
        let rho = DensityOperator::maximally_mixed(2);
        for d in [dir(0.0, 0.0), dir(1.0, 2.0), dir(PI, 6.0)] {
            assert!((single_angular_pdf(&rho, &h, &d).unwrap() - 1.0 / FOUR_PI).abs() < 1e-15);
        }
    }

    #[test]
    fn spin_up_along_z() {
        let alpha = 0.642;
        let h = HyperonSpecies::spin_half(alpha, [1.0, 0.0, 0.0]).unwrap();
        let up = DensityOperator::from_state(&StateVector::basis(2, 0).unwrap());
        let p = single_angular_pdf(&up, &h, &dir(0.0, 0.0)).unwrap();
        assert!((p - (1.0 + alpha) / FOUR_PI).abs() < 1e-15);
        let p = single_angular_pdf(&up, &h, &dir(PI, 0.0)).unwrap();
        assert!((p - (1.0 - alpha) / FOUR_PI).abs() < 1e-15);
    }

    #[test]
    fn zero_alpha_isotropic() {
        let h = HyperonSpecies::spin_half(0.0, [0.0, 0.0, 1.0]).unwrap();
        let up = DensityOperator::from_state(&StateVector::basis(2, 0).unwrap());
        assert!((single_angular_pdf(&up, &h, &dir(0.4, 1.0)).unwrap() - 1.0 / FOUR_PI).abs() < 1e-15);
    }

    #[test]
    fn dimension_and_spin_checks() {
        let h = HyperonSpecies::spin_half(0.5, [0.0, 0.0, 1.0]).unwrap();
        assert!(single_angular_pdf(&DensityOperator::maximally_mixed(3), &h, &dir(0.0, 0.0)).is_err());
    }

    #[test]
    fn joint_minimum_at_parallel() {
        let (a, b) = (0.46f64.sqrt(), 0.46f64.sqrt());
        let n = dir(0.3, 0.2);
        let p = joint_angular_pdf(a, b, &n, &n).unwrap();
        assert!((p - (1.0 - 0.46) / (FOUR_PI * FOUR_PI)).abs() < 1e-15);
        let p0 = joint_angular_pdf(0.0, 0.9, &n, &dir(2.0, 1.0)).unwrap();
        assert!((p0 - 1.0 / (FOUR_PI * FOUR_PI)).abs() < 1e-18);
        assert!(joint_angular_pdf(1.5, 0.0, &n, &n).is_err());
    }

    #[test]
    fn singlet_state_route_matches_closed_form() {
        let rho = DensityOperator::from_state(&StateVector::singlet());
        for (n, m) in [(dir(0.3, 0.2), dir(2.1, 4.0)), (dir(1.0, 0.0), dir(1.0, 0.0)), (dir(0.0, 0.0), dir(PI, 0.0))] {
            let a = joint_angular_pdf(0.7, -0.6, &n, &m).unwrap();
            let b = joint_angular_pdf_from_state(&rho, 0.7, -0.6, &n, &m).unwrap();
            assert!((a - b).abs() < 1e-16, "{a} vs {b}");
        }
    }

    #[test]
    fn direction_round_trip() {
        let d = dir(1.2, 5.5);
        let back = DecayDirection::from_vector(d.unit_vector()).unwrap();
        assert!((back.theta - d.theta).abs() < 1e-14 && (back.phi - d.phi).abs() < 1e-14);
        assert!(DecayDirection::new(-0.1, 0.0).is_err());
        assert!(DecayDirection::new(0.1, TAU).is_err());
    }
}
