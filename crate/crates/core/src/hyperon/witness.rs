use serde::Serialize;

use super::{check_alpha, EventBatch};
use crate::bell::{CLASSICAL_BOUND, QUANTUM_BOUND};
use crate::error::{Error, Result};

/// Estimated witness value `Tr(W ρ)` with `W = (1 + Σ σ_i⊗σ_i)/3`, as seen
/// through the decay asymmetries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub witness_value: f64,
    pub standard_error: f64,
    /// `witness_value + 3·standard_error < 0`.
    pub entangled_verdict: bool,
    pub events: usize,
    pub alpha_product: f64,
}

/// Moment estimator of the witness.
///
/// Under the joint density `(1 + α_Λα_Λ̄ Σ n_i C_ij m_j)/(4π)²` the sphere
/// moments give `⟨n_i m_i⟩ = α_Λα_Λ̄ C_ii / 9`, so
/// `w = (1 + 9 Σ_i ⟨n_i m_i⟩)/3` estimates `(1 + α_Λα_Λ̄ Σ C_ii)/3`, which is
/// `1/3 − α_Λα_Λ̄` for the singlet. The result is deliberately not divided by
/// `α_Λα_Λ̄`: separable states can reach up to `1/3` after such rescaling.
///
/// The standard error uses the per-axis sample variances combined in
/// quadrature.
pub fn witness_from_events(batch: &EventBatch) -> Result<WitnessReport> {
    let n = batch.len();
    if n == 0 {
        return Err(Error::input("witness needs at least one event"));
    }
    let mut sum = [0.0f64; 3];
    let mut sum_sq = [0.0f64; 3];
    for (a, b) in &batch.events {
        let u = a.unit_vector();
        let v = b.unit_vector();
        for i in 0..3 {
            let x = u[i] * v[i];
            sum[i] += x;
            sum_sq[i] += x * x;
        }
    }
    let nf = n as f64;
    let means = sum.map(|s| s / nf);
    let witness_value = (1.0 + 9.0 * means.iter().sum::<f64>()) / 3.0;
    let standard_error = if n > 1 {
        let var_sum: f64 = (0..3)
            .map(|i| ((sum_sq[i] - nf * means[i] * means[i]) / (nf - 1.0)).max(0.0))
            .sum();
        3.0 * (var_sum / nf).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(WitnessReport {
        witness_value,
        standard_error,
        entangled_verdict: witness_value + 3.0 * standard_error < 0.0,
        events: n,
        alpha_product: batch.alpha_product,
    })
}

/// Largest CHSH value reachable with decay-based spin readout of the singlet.
///
/// Even a violation here would not be a conclusive Bell test: the decay
/// picks its own quantization axis, so the measurement is passive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HyperonChshBound {
    pub max_s: f64,
    /// `|max_s|` exceeds 2 by more than rounding (`1e-12`), i.e.
    /// `|α_Λ α_Λ̄| > 1/√2`.
    pub violated: bool,
}

const THRESHOLD_SLACK: f64 = 1e-12;

/// `max S = 2√2 · α_Λ α_Λ̄`.
pub fn hyperon_chsh_bound(alpha_l: f64, alpha_lbar: f64) -> Result<HyperonChshBound> {
    check_alpha(alpha_l)?;
    check_alpha(alpha_lbar)?;
    let prod = alpha_l * alpha_lbar;
    let max_s = QUANTUM_BOUND * prod;
    Ok(HyperonChshBound { max_s, violated: max_s.abs() > CLASSICAL_BOUND + THRESHOLD_SLACK })
}
