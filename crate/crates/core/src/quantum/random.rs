//! Random states and channels for property tests and demos.

use rand::Rng;
use rand_distr::StandardNormal;

use super::{c, CMatrix, CVector, DensityOperator, KrausChannel, StateVector, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Uniformly distributed point on the unit sphere.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

/// Haar-random normalized pure state.
pub fn pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> StateVector {
    let v = CVector::from_fn(dim, |_, _| gaussian(rng));
    let n = v.norm();
    StateVector::from_vector_unchecked(v / C64::from(n))
}

/// Normalized mixed state from the Ginibre ensemble.
pub fn density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    let g = ginibre(dim, dim, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityOperator::from_matrix_unchecked(m / C64::from(tr))
}

/// Like [`density`] but scaled by a uniform trace in `[0, 1]`.
pub fn subnormalized_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    let w: f64 = rng.random();
    let rho = density(dim, rng);
    DensityOperator::from_matrix_unchecked(rho.matrix() * C64::from(w))
}

/// Random channel with `n_ops` operators, scaled so that `Σ K†K = s·1`
/// with `s` uniform in `[0, 1]` when `lossy`, and `s = 1` otherwise.
pub fn channel<R: Rng + ?Sized>(dim: usize, n_ops: usize, lossy: bool, rng: &mut R) -> KrausChannel {
    // isometry V: C^d -> C^(n d) from the QR factor of a Ginibre matrix
    let g = ginibre(n_ops * dim, dim, rng);
    let q = g.qr().q();
    let scale = if lossy { rng.random::<f64>().sqrt() } else { 1.0 };
    let ops = (0..n_ops)
        .map(|i| q.rows(i * dim, dim).into_owned() * C64::from(scale))
        .collect();
    KrausChannel::from_operators_unchecked(ops)
}

/// Random product state `ρ_A ⊗ ρ_B` of two qubits.
pub fn product_qubits<R: Rng + ?Sized>(rng: &mut R) -> DensityOperator {
    use super::Tensor;
    density(2, rng).tensor(&density(2, rng))
}
