use super::{hermitian_eigenvalues, tolerance, CMatrix, DensityOperator, C64};
use crate::error::{Error, Result};

/// Completely positive, trace non-increasing map `ρ ↦ Σ K_i ρ K_i†`.
///
/// `Σ K_i†K_i ≼ 1` is checked on construction; strict inequality is
/// allowed and models probability leaving the system.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    operators: Vec<CMatrix>,
}

impl KrausChannel {
    pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::input("Kraus channel needs at least one operator"))?;
        let (rows, cols) = first.shape();
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimension("empty Kraus operator".into()));
        }
        if operators.iter().any(|k| k.shape() != (rows, cols)) {
            return Err(Error::input("Kraus operators must share one shape"));
        }
        let ch = KrausChannel { operators };
        let slack = CMatrix::identity(cols, cols) - ch.completeness();
        let min_ev = hermitian_eigenvalues(&slack)[0];
        if min_ev < -tolerance() {
            return Err(Error::input(format!(
                "Σ K†K exceeds identity (slack eigenvalue {min_ev:e})"
            )));
        }
        Ok(ch)
    }

    pub fn identity(dim: usize) -> Self {
        KrausChannel { operators: vec![CMatrix::identity(dim, dim)] }
    }

    pub(crate) fn from_operators_unchecked(operators: Vec<CMatrix>) -> Self {
        KrausChannel { operators }
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn dim_in(&self) -> usize {
        self.operators[0].ncols()
    }

    pub fn dim_out(&self) -> usize {
        self.operators[0].nrows()
    }

    /// `Σ K_i†K_i`.
    pub fn completeness(&self) -> CMatrix {
        let d = self.dim_in();
        self.operators
            .iter()
            .fold(CMatrix::zeros(d, d), |acc, k| acc + k.adjoint() * k)
    }
}

/// `ρ′ = Σ K_i ρ K_i†`.
pub fn apply_channel(ch: &KrausChannel, rho: &DensityOperator) -> Result<DensityOperator> {
    if ch.dim_in() != rho.dim() {
        return Err(Error::input(format!(
            "channel input dim {} does not match state dim {}",
            ch.dim_in(),
            rho.dim()
        )));
    }
    let d = ch.dim_out();
    let m = rho.matrix();
    let out = ch
        .operators()
        .iter()
        .fold(CMatrix::zeros(d, d), |acc, k| acc + k * m * k.adjoint());
    // exact Hermitian part; the map preserves it analytically
    let out = (&out + out.adjoint()) * C64::from(0.5);
    Ok(DensityOperator::from_matrix_unchecked(out))
}
