mod common;

use decaybell::hyperon::{kraus_from_species, HyperonSpecies};
use decaybell::quantum::{
    apply_channel, expectation, gellmann_basis, partial_trace, pauli, spin_along, CMatrix, DensityOperator,
    KrausChannel, Observable, StateVector, Subsystem, Tensor,
};
use decaybell::Error;

fn c(re: f64, im: f64) -> decaybell::quantum::C64 {
    decaybell::quantum::C64::new(re, im)
}

seeded_props! { 10_000;
    density_structure => common::density_invariants,
    channel_trace_and_positivity => common::channel_preserves_positivity,
    partial_trace_product => common::partial_trace_of_product,
    partial_trace_trace => common::partial_trace_keeps_trace,
    bloch_round_trip => common::bloch_round_trip,
    singlet_correlation => common::singlet_correlation,
}

fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && (a - b).iter().all(|z| z.norm() < tol)
}

#[test]
fn gellmann_qubit_is_pauli() {
    let g = gellmann_basis(2).unwrap();
    for (k, m) in g.iter().enumerate() {
        assert!(close(m, &pauli(k), 1e-15));
        assert!(m.trace().norm() < 1e-15);
    }
}

#[test]
fn gellmann_higher_dims_orthogonal_traceless() {
    for d in 2..=6 {
        let g = gellmann_basis(d).unwrap();
        assert_eq!(g.len(), d * d - 1);
        for (i, a) in g.iter().enumerate() {
            assert!(close(a, &a.adjoint(), 1e-15));
            assert!(a.trace().norm() < 1e-14);
            for (j, b) in g.iter().enumerate() {
                let ip = (a * b).trace();
                let want = if i == j { 2.0 } else { 0.0 };
                assert!((ip - c(want, 0.0)).norm() < 1e-13, "d={d} ({i},{j}) {ip}");
            }
        }
    }
    assert!(matches!(gellmann_basis(1), Err(Error::InvalidDimension(_))));
}

#[test]
fn tensor_examples() {
    let i2 = CMatrix::identity(2, 2);
    assert!(close(&i2.tensor(&i2), &CMatrix::identity(4, 4), 0.0 + 1e-300));
    let up = StateVector::basis(2, 0).unwrap();
    let down = StateVector::basis(2, 1).unwrap();
    assert_eq!(up.tensor(&down), StateVector::basis(4, 1).unwrap());

    let zz = Observable::dichotomic(pauli(2).tensor(&pauli(2))).unwrap();
    let singlet = DensityOperator::from_state(&StateVector::singlet());
    assert!((expectation(&zz, &singlet).unwrap() + 1.0).abs() < 1e-15);
}

#[test]
fn partial_trace_examples() {
    let singlet = DensityOperator::from_state(&StateVector::singlet());
    let half = CMatrix::identity(2, 2) * c(0.5, 0.0);
    for s in [Subsystem::A, Subsystem::B] {
        let r = partial_trace(&singlet, 2, 2, s).unwrap();
        assert!(close(r.matrix(), &half, 1e-15));
    }
    assert!(matches!(partial_trace(&singlet, 3, 2, Subsystem::B), Err(Error::InvalidInput(_))));
}

#[test]
fn channel_examples() {
    let mixed = DensityOperator::maximally_mixed(2);
    let same = apply_channel(&KrausChannel::identity(2), &mixed).unwrap();
    assert!(close(same.matrix(), mixed.matrix(), 1e-15));

    let p_up = CMatrix::from_fn(2, 2, |i, j| c(if i == 0 && j == 0 { 1.0 } else { 0.0 }, 0.0));
    let p_down = CMatrix::identity(2, 2) - &p_up;
    let dephase = KrausChannel::new(vec![p_up, p_down]).unwrap();
    let out = apply_channel(&dephase, &mixed).unwrap();
    assert!(close(out.matrix(), mixed.matrix(), 1e-15));

    let wrong = DensityOperator::maximally_mixed(3);
    assert!(matches!(apply_channel(&dephase, &wrong), Err(Error::InvalidInput(_))));
}

#[test]
fn decay_channel_on_spin_up_by_hand() {
    // ω₂ at polar angle θ: Π± = (1 ± ω̂·σ)/2, spin-up ρ = diag(1, 0)
    for (alpha, theta) in [(0.64, 0.3), (-0.2, 2.0), (1.0, 0.0)] {
        let axis = [f64::sin(theta), 0.0, f64::cos(theta)];
        let h = HyperonSpecies::spin_half(alpha, axis).unwrap();
        let up = DensityOperator::from_state(&StateVector::basis(2, 0).unwrap());
        let out = apply_channel(&kraus_from_species(&h).unwrap(), &up).unwrap();
        let (wp, wm) = ((1.0 + alpha) / 2.0, (1.0 - alpha) / 2.0);
        let (pp, pm) = ((1.0 + theta.cos()) / 2.0, (1.0 - theta.cos()) / 2.0);
        assert!((out.trace() - (wp * pp + wm * pm)).abs() < 1e-14);
        // weighted projectors: ω₊ Tr(Π₊ρ) Π₊ + ω₋ Tr(Π₋ρ) Π₋
        let proj = |s: f64| {
            let sx = pauli(0) * c(s * axis[0] / 2.0, 0.0);
            let sz = pauli(2) * c(s * axis[2] / 2.0, 0.0);
            CMatrix::identity(2, 2) * c(0.5, 0.0) + sx + sz
        };
        let want = proj(1.0) * c(wp * pp, 0.0) + proj(-1.0) * c(wm * pm, 0.0);
        assert!(close(out.matrix(), &want, 1e-14));
    }
}

#[test]
fn expectation_examples() {
    let mixed = DensityOperator::maximally_mixed(2);
    assert!((expectation(&Observable::identity(2), &mixed).unwrap() - 1.0).abs() < 1e-15);
    let z = spin_along([0.0, 0.0, 1.0]).unwrap();
    assert!(expectation(&z, &mixed).unwrap().abs() < 1e-15);
    let mut m = pauli(0);
    m[(0, 1)] = c(2.0, 0.0);
    assert!(matches!(Observable::new(m), Err(Error::InvalidInput(_))));
}
