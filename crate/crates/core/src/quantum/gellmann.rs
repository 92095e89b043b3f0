use super::{c, trace_re, CMatrix, DensityOperator, C64};
use crate::error::{Error, Result};

/// Generalized Gell-Mann matrices for dimension `d`, normalized so that
/// `Tr(Γ_i Γ_j) = 2 δ_ij`.
///
/// Ordering: symmetric off-diagonal elements for each pair `j < k`, then the
/// antisymmetric ones, then the `d − 1` diagonal elements. At `d = 2` this
/// gives exactly `σx, σy, σz`.
pub fn gellmann_basis(d: usize) -> Result<Vec<CMatrix>> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!(
            "Gell-Mann basis needs d >= 2, got {d}"
        )));
    }
    let mut basis = Vec::with_capacity(d * d - 1);
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|j| (j + 1..d).map(move |k| (j, k)))
        .collect();
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(d, d);
        m[(j, k)] = c(1.0, 0.0);
        m[(k, j)] = c(1.0, 0.0);
        basis.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(d, d);
        m[(j, k)] = c(0.0, -1.0);
        m[(k, j)] = c(0.0, 1.0);
        basis.push(m);
    }
    for l in 1..d {
        let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = CMatrix::zeros(d, d);
        for j in 0..l {
            m[(j, j)] = c(scale, 0.0);
        }
        m[(l, l)] = c(-(l as f64) * scale, 0.0);
        basis.push(m);
    }
    Ok(basis)
}

/// Bloch-vector form of a state: `ρ = (1/d)(1 + b·Γ)`.
///
/// With the `Tr(ΓΓ) = 2δ` normalization a pure state has
/// `|b|² = d(d − 1)/2`, which is `s(2s + 1)` for spin `s` and `1` for a qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochExpansion {
    dim: usize,
    vector: Vec<f64>,
}

impl BlochExpansion {
    pub fn new(dim: usize, vector: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(format!("Bloch expansion needs d >= 2, got {dim}")));
        }
        if vector.len() != dim * dim - 1 {
            return Err(Error::input(format!(
                "Bloch vector for d={dim} needs {} components, got {}",
                dim * dim - 1,
                vector.len()
            )));
        }
        if vector.iter().any(|x| !x.is_finite()) {
            return Err(Error::input("Bloch vector has non-finite components"));
        }
        Ok(BlochExpansion { dim, vector })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self) -> &[f64] {
        &self.vector
    }

    pub fn norm(&self) -> f64 {
        self.vector.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Bloch length of a pure state in this dimension.
    pub fn pure_state_length(dim: usize) -> f64 {
        ((dim * (dim - 1)) as f64 / 2.0).sqrt()
    }
}

/// `ρ = (1/d)(1 + b·Γ)`; fails if the result is not a valid density operator.
pub fn density_from_bloch(b: &BlochExpansion) -> Result<DensityOperator> {
    let d = b.dim;
    let basis = gellmann_basis(d)?;
    let mut m = CMatrix::identity(d, d);
    for (g, &bi) in basis.iter().zip(&b.vector) {
        m += g * C64::from(bi);
    }
    DensityOperator::new(m / C64::from(d as f64))
}

/// Inverse of [`density_from_bloch`]: `b_i = (d/2) Tr(Γ_i ρ)`.
///
/// For a sub-normalized `ρ` the coefficients are taken relative to `Tr ρ`,
/// so the identity part is dropped and only the shape is kept.
pub fn bloch_from_density(rho: &DensityOperator) -> Result<BlochExpansion> {
    let d = rho.dim();
    let basis = gellmann_basis(d)?;
    let m = rho.matrix();
    let tr = trace_re(m);
    if tr <= 0.0 {
        return Err(Error::input("Bloch expansion of a zero-trace operator"));
    }
    let scale = d as f64 / (2.0 * tr);
    let vector = basis
        .iter()
        .map(|g| trace_re(&(g * m)) * scale)
        .collect();
    BlochExpansion::new(d, vector)
}
