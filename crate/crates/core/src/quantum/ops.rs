use super::{
    c, hermiticity_residual, hermitian_eigenvalues, tolerance, trace_re, CMatrix, DensityOperator,
    KrausChannel, StateVector, C64,
};
use crate::error::{Error, Result};

/// Kronecker composition of two objects of the same kind.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Self;
}

impl Tensor for CMatrix {
    fn tensor(&self, other: &Self) -> Self {
        self.kronecker(other)
    }
}

impl Tensor for StateVector {
    fn tensor(&self, other: &Self) -> Self {
        StateVector::from_vector_unchecked(self.amplitudes().kronecker(other.amplitudes()))
    }
}

impl Tensor for DensityOperator {
    fn tensor(&self, other: &Self) -> Self {
        DensityOperator::from_matrix_unchecked(self.matrix().kronecker(other.matrix()))
    }
}

impl Tensor for Observable {
    fn tensor(&self, other: &Self) -> Self {
        Observable {
            matrix: self.matrix.kronecker(&other.matrix),
            dichotomic: self.dichotomic && other.dichotomic,
        }
    }
}

impl Tensor for KrausChannel {
    /// All pairwise products `K_i ⊗ L_j`.
    fn tensor(&self, other: &Self) -> Self {
        let ops = self
            .operators()
            .iter()
            .flat_map(|a| other.operators().iter().map(move |b| a.kronecker(b)))
            .collect();
        KrausChannel::from_operators_unchecked(ops)
    }
}

/// Which factor of `A ⊗ B` a partial trace removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Traces out `traced` from a state on `A ⊗ B` with the given factor dimensions.
pub fn partial_trace(
    rho: &DensityOperator,
    dim_a: usize,
    dim_b: usize,
    traced: Subsystem,
) -> Result<DensityOperator> {
    if dim_a == 0 || dim_b == 0 || dim_a * dim_b != rho.dim() {
        return Err(Error::input(format!(
            "dimension {} does not factor as {dim_a} x {dim_b}",
            rho.dim()
        )));
    }
    let m = rho.matrix();
    let out = match traced {
        Subsystem::B => CMatrix::from_fn(dim_a, dim_a, |i, j| {
            (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
        }),
        Subsystem::A => CMatrix::from_fn(dim_b, dim_b, |i, j| {
            (0..dim_a).map(|k| m[(k * dim_b + i, k * dim_b + j)]).sum()
        }),
    };
    Ok(DensityOperator::from_matrix_unchecked(out))
}

/// Pauli matrix for axis 0 = x, 1 = y, 2 = z.
///
/// # Panics
/// If `axis > 2`.
pub fn pauli(axis: usize) -> CMatrix {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    match axis {
        0 => CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        1 => CMatrix::from_row_slice(2, 2, &[z, c(0.0, -1.0), c(0.0, 1.0), z]),
        2 => CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
        _ => panic!("pauli axis {axis} out of range"),
    }
}

/// `a·σ` for a unit vector `a`.
pub fn spin_along(direction: [f64; 3]) -> Result<Observable> {
    let n = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::input(format!("spin direction must be a unit vector, |a| = {n}")));
    }
    let m = (0..3).fold(CMatrix::zeros(2, 2), |acc, k| acc + pauli(k) * C64::from(direction[k]));
    Ok(Observable { matrix: m, dichotomic: true })
}

/// Hermitian observable, optionally flagged dichotomic (spectrum ⊆ {±1}).
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: CMatrix,
    dichotomic: bool,
}

impl Observable {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidDimension("observable must be square".into()));
        }
        let r = hermiticity_residual(&matrix);
        if r > tolerance() {
            return Err(Error::input(format!("observable is not Hermitian (residual {r:e})")));
        }
        Ok(Observable { matrix, dichotomic: false })
    }

    /// Checks that every eigenvalue is ±1.
    pub fn dichotomic(matrix: CMatrix) -> Result<Self> {
        let mut o = Self::new(matrix)?;
        let tol = tolerance().max(1e-9);
        if hermitian_eigenvalues(&o.matrix)
            .iter()
            .any(|ev| (ev.abs() - 1.0).abs() > tol)
        {
            return Err(Error::input("dichotomic observable needs eigenvalues ±1"));
        }
        o.dichotomic = true;
        Ok(o)
    }

    pub fn identity(dim: usize) -> Self {
        Observable { matrix: CMatrix::identity(dim, dim), dichotomic: true }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn is_dichotomic(&self) -> bool {
        self.dichotomic
    }
}

/// `Tr(O ρ)`. For a sub-normalized `ρ` the result carries the trace weight.
pub fn expectation(o: &Observable, rho: &DensityOperator) -> Result<f64> {
    if o.dim() != rho.dim() {
        return Err(Error::input(format!(
            "observable dim {} does not match state dim {}",
            o.dim(),
            rho.dim()
        )));
    }
    Ok(trace_re(&(o.matrix() * rho.matrix())))
}
