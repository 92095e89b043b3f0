//! Dense complex linear algebra and quantum-state primitives.
//!
//! Everything here works on small matrices (at most 16×16 in practice) and
//! every type is an immutable value once built. Sub-normalized states are
//! allowed throughout: a trace below one is read as probability lost to
//! decay.

mod channel;
mod gellmann;
mod ops;
pub mod random;
mod state;

use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub use channel::{apply_channel, KrausChannel};
pub use gellmann::{bloch_from_density, density_from_bloch, gellmann_basis, BlochExpansion};
pub use ops::{expectation, partial_trace, pauli, spin_along, Observable, Subsystem, Tensor};
pub use state::{DensityOperator, StateVector};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

const DEFAULT_TOLERANCE: f64 = 1e-10;

// zero bits mean "unset"
static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0);

/// Structural tolerance used by every validity check in the crate.
pub fn tolerance() -> f64 {
    match TOLERANCE_BITS.load(Ordering::Relaxed) {
        0 => DEFAULT_TOLERANCE,
        bits => f64::from_bits(bits),
    }
}

/// Overrides the structural tolerance. Non-positive or non-finite values
/// restore the default of `1e-10`.
pub fn set_tolerance(tol: f64) {
    let tol = if tol.is_finite() && tol > 0.0 { tol } else { DEFAULT_TOLERANCE };
    TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
}

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest elementwise modulus of `m − m†`.
pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    // symmetrize first so round-off in the lower triangle cannot leak in
    let h = (m + m.adjoint()) * c(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub(crate) fn trace_re(m: &CMatrix) -> f64 {
    m.trace().re
}
