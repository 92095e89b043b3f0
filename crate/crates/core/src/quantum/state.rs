use super::{c, hermiticity_residual, hermitian_eigenvalues, tolerance, trace_re, CMatrix, CVector, C64};
use crate::error::{Error, Result};

/// Pure (possibly sub-normalized) state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    /// Accepts any finite vector with squared norm at most `1 + tol`.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension("empty state vector".into()));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::input("state vector has non-finite amplitudes"));
        }
        let v = CVector::from_vec(amplitudes);
        let n2 = v.norm_squared();
        if n2 > 1.0 + tolerance() {
            return Err(Error::input(format!("state norm² {n2} exceeds 1")));
        }
        Ok(StateVector { amplitudes: v })
    }

    /// Computational basis vector `|index⟩` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::input(format!("basis index {index} out of range for dim {dim}")));
        }
        let mut v = vec![C64::from(0.0); dim];
        v[index] = C64::from(1.0);
        Self::new(v)
    }

    /// `(|01⟩ − |10⟩)/√2`.
    pub fn singlet() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        StateVector {
            amplitudes: CVector::from_vec(vec![c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)]),
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    pub(crate) fn from_vector_unchecked(amplitudes: CVector) -> Self {
        StateVector { amplitudes }
    }
}

/// Hermitian, positive semidefinite operator with `0 ≤ Tr ρ ≤ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, positivity and the trace range at the
    /// current [`tolerance`](super::tolerance).
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidDimension(format!(
                "density operator must be square and non-empty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::input("density operator has non-finite entries"));
        }
        let tol = tolerance();
        let herm = hermiticity_residual(&matrix);
        if herm > tol {
            return Err(Error::input(format!("not Hermitian (residual {herm:e})")));
        }
        let tr = trace_re(&matrix);
        if !(-tol..=1.0 + tol).contains(&tr) {
            return Err(Error::input(format!("trace {tr} outside [0, 1]")));
        }
        let min_ev = hermitian_eigenvalues(&matrix)[0];
        if min_ev < -tol {
            return Err(Error::input(format!("negative eigenvalue {min_ev:e}")));
        }
        Ok(DensityOperator { matrix })
    }

    pub fn from_state(psi: &StateVector) -> Self {
        let v = psi.amplitudes();
        DensityOperator { matrix: v * v.adjoint() }
    }

    /// `1/d` on the diagonal.
    pub fn maximally_mixed(dim: usize) -> Self {
        DensityOperator {
            matrix: CMatrix::identity(dim, dim) * C64::from(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        trace_re(&self.matrix)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// Scales by `1 / Tr ρ`. Only meaningful for diagnostics; decay loss is
    /// information and the physics code never calls this.
    pub fn normalized(&self) -> Result<Self> {
        let tr = self.trace();
        if tr <= 0.0 {
            return Err(Error::input("cannot normalize a zero-trace operator"));
        }
        Ok(DensityOperator { matrix: &self.matrix / C64::from(tr) })
    }

    /// Convex mixture `Σ w_i ρ_i`; weights must be non-negative and sum to at most one.
    pub fn mixture(parts: &[(f64, DensityOperator)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::input("empty mixture"))?;
        let d = first.1.dim();
        let mut m = CMatrix::zeros(d, d);
        for (w, rho) in parts {
            if *w < 0.0 || rho.dim() != d {
                return Err(Error::input("mixture weights must be >= 0 and dimensions equal"));
            }
            m += rho.matrix() * C64::from(*w);
        }
        Self::new(m)
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        DensityOperator { matrix }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(0.5, 0.0);
        m[(1, 1)] = c(0.5, 0.0);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(DensityOperator::new(m).is_err());
    }

    #[test]
    fn rejects_negative_eigenvalue() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.2, 0.0);
        m[(1, 1)] = c(-0.2, 0.0);
        assert!(DensityOperator::new(m).is_err());
    }

    #[test]
    fn subnormalized_is_allowed() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(0.3, 0.0);
        let rho = DensityOperator::new(m).unwrap();
        assert!((rho.trace() - 0.3).abs() < 1e-15);
        assert!(StateVector::new(vec![c(0.5, 0.0), c(0.0, 0.5)]).is_ok());
        assert!(StateVector::new(vec![c(1.0, 0.0), c(0.0, 0.5)]).is_err());
    }

    #[test]
    fn singlet_is_normalized() {
        assert!((StateVector::singlet().norm_squared() - 1.0).abs() < 1e-15);
    }
}
