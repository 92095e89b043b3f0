//! Shared oracles and randomized invariant checks.
//!
//! Each check runs one randomized case from the given generator and returns
//! a description of the first violation. The proptest suites and the
//! acceptance run drive the same functions.

#![allow(dead_code)]

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use nalgebra::{Matrix2, Vector4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use decaybell::bell::{
    kaon_chsh_scan, quantum_chsh, ChshConfig, LocalStrategy, MeasurementSetting, ScanOptions, TimeGrid,
    CLASSICAL_BOUND, QUANTUM_BOUND,
};
use decaybell::hyperon::{
    kraus_from_species, sample_events_with_workers, single_angular_pdf, DecayDirection, HyperonSpecies,
};
use decaybell::kaon::{
    active_strangeness_joint, active_strangeness_outcomes, evolve_pair, evolve_single, oscillation_probabilities,
    ActiveQuestion, FlavorState, KaonConstants,
};
use decaybell::qkd::{
    audit, run_session_with_workers, sift_keys, Eavesdropper, EveDirection, ProtocolConfig, PublicAnnouncement,
};
use decaybell::quantum::{
    apply_channel, bloch_from_density, density_from_bloch, expectation, hermitian_eigenvalues,
    hermiticity_residual, partial_trace, random, spin_along, DensityOperator, StateVector,
    Subsystem, Tensor,
};

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

// ---------------------------------------------------------------- oracles

/// `∫ f(n) dΩ` by Gauss–Legendre in `cos θ` and in `φ`.
pub fn sphere_integral(order: usize, mut f: impl FnMut([f64; 3]) -> f64) -> f64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(order).unwrap());
    rule.integrate(-1.0, 1.0, |z| {
        let r = (1.0 - z * z).max(0.0).sqrt();
        rule.integrate(0.0, std::f64::consts::TAU, |phi| f([r * phi.cos(), r * phi.sin(), z]))
    })
}

/// Flavour-basis propagator `V diag(e^{−iλt}) V⁻¹`, columns of `V` being
/// `K_S`, `K_L` written in `(K⁰, K̄⁰)`.
pub fn flavor_propagator(t: f64, c: &KaonConstants) -> Matrix2<Complex64> {
    let e = c.epsilon;
    let one = Complex64::new(1.0, 0.0);
    let n = 1.0 / (2.0 * (1.0 + e.norm_sqr())).sqrt();
    let v = Matrix2::new((one + e) * n, (one + e) * n, -(one - e) * n, (one - e) * n);
    let lam = |m: f64, g: f64| (Complex64::new(0.0, -1.0) * Complex64::new(m, -g / 2.0) * t).exp();
    let d = Matrix2::new(lam(c.m_s, c.gamma_s), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), lam(c.m_l, c.gamma_l));
    v * d * v.try_inverse().expect("K_S and K_L are independent")
}

fn kron2(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> nalgebra::Matrix4<Complex64> {
    nalgebra::Matrix4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

fn fidx(f: FlavorState) -> usize {
    match f {
        FlavorState::K0 => 0,
        FlavorState::K0bar => 1,
    }
}

/// Yes/no table for two active questions from the 4-amplitude flavour state.
pub fn brute_force_joint(ql: &ActiveQuestion, qr: &ActiveQuestion, c: &KaonConstants) -> [[f64; 2]; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi0 = Vector4::new(0.0, s, -s, 0.0).map(|x| Complex64::new(x, 0.0));
    let id = Matrix2::identity();
    let state = |tl: f64, tr: f64| kron2(&flavor_propagator(tl, c), &flavor_propagator(tr, c)) * psi0;
    let both = state(ql.time, qr.time);
    let (il, ir) = (fidx(ql.target), fidx(qr.target));
    let yy = both[2 * il + ir].norm_sqr();
    let left = kron2(&flavor_propagator(ql.time, c), &id) * psi0;
    let right = kron2(&id, &flavor_propagator(qr.time, c)) * psi0;
    let ml: f64 = (0..2).map(|r| left[2 * il + r].norm_sqr()).sum();
    let mr: f64 = (0..2).map(|l| right[2 * l + ir].norm_sqr()).sum();
    [[yy, ml - yy], [mr - yy, 1.0 - ml - mr + yy]]
}

/// `p(K⁰ → K⁰, t)` without CP violation.
pub fn closed_form_survival(t: f64, c: &KaonConstants) -> f64 {
    0.25 * ((-c.gamma_s * t).exp()
        + (-c.gamma_l * t).exp()
        + 2.0 * (-(c.gamma_s + c.gamma_l) * t / 2.0).exp() * (c.delta_m() * t).cos())
}

pub fn random_epsilon(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.random_range(-0.01..0.01), r.random_range(-0.01..0.01))
}

pub fn random_constants(r: &mut ChaCha8Rng) -> KaonConstants {
    let p = KaonConstants::physical();
    KaonConstants::new(p.gamma_s, p.gamma_l, p.delta_m(), random_epsilon(r)).expect("small epsilon is valid")
}

/// Log-uniform proper time over many lifetimes, with exact zero now and then.
pub fn random_time(r: &mut ChaCha8Rng, c: &KaonConstants) -> f64 {
    if r.random_bool(0.05) {
        return 0.0;
    }
    let x: f64 = r.random_range(-3.0..3.5);
    10f64.powf(x) / c.gamma_s
}

pub fn random_flavor(r: &mut ChaCha8Rng) -> FlavorState {
    if r.random_bool(0.5) {
        FlavorState::K0
    } else {
        FlavorState::K0bar
    }
}

pub fn random_spin_config(r: &mut ChaCha8Rng) -> ChshConfig {
    let s = [0; 4].map(|_| MeasurementSetting::Spin(random::unit_vector(r)));
    ChshConfig::new(s).expect("unit vectors")
}

fn density_structure(rho: &DensityOperator, tol: f64) -> Check {
    let herm = hermiticity_residual(rho.matrix());
    ensure!(herm < tol, "hermiticity residual {herm:e}");
    let min = hermitian_eigenvalues(rho.matrix())[0];
    ensure!(min > -tol, "min eigenvalue {min:e}");
    let tr = rho.trace();
    ensure!((0.0..=1.0 + tol).contains(&tr), "trace {tr}");
    Ok(())
}

fn max_abs_diff(a: &decaybell::quantum::CMatrix, b: &decaybell::quantum::CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

// ---------------------------------------------------------- quantum-core

pub fn density_invariants(r: &mut ChaCha8Rng) -> Check {
    let d = r.random_range(2..=4);
    let rho = if r.random_bool(0.5) { random::density(d, r) } else { random::subnormalized_density(d, r) };
    let checked = DensityOperator::new(rho.matrix().clone()).map_err(|e| e.to_string())?;
    density_structure(&checked, 1e-10)
}

pub fn channel_preserves_positivity(r: &mut ChaCha8Rng) -> Check {
    let d = r.random_range(2..=4);
    let n_ops = r.random_range(1..=4);
    let ch = random::channel(d, n_ops, r.random_bool(0.5), r);
    let rho = random::subnormalized_density(d, r);
    let out = apply_channel(&ch, &rho).map_err(|e| e.to_string())?;
    ensure!(out.trace() <= rho.trace() + 1e-10, "trace grew {} -> {}", rho.trace(), out.trace());
    density_structure(&out, 1e-10)
}

pub fn partial_trace_of_product(r: &mut ChaCha8Rng) -> Check {
    let (da, db) = (r.random_range(2..=3), r.random_range(2..=3));
    let a = random::density(da, r);
    let b = random::density(db, r);
    let ab = a.tensor(&b);
    let ra = partial_trace(&ab, da, db, Subsystem::B).map_err(|e| e.to_string())?;
    let rb = partial_trace(&ab, da, db, Subsystem::A).map_err(|e| e.to_string())?;
    let ea = max_abs_diff(ra.matrix(), a.matrix());
    let eb = max_abs_diff(rb.matrix(), b.matrix());
    ensure!(ea < 1e-12 && eb < 1e-12, "partial trace residuals {ea:e}, {eb:e}");
    Ok(())
}

pub fn partial_trace_keeps_trace(r: &mut ChaCha8Rng) -> Check {
    let rho = random::subnormalized_density(4, r);
    for s in [Subsystem::A, Subsystem::B] {
        let out = partial_trace(&rho, 2, 2, s).map_err(|e| e.to_string())?;
        ensure!((out.trace() - rho.trace()).abs() < 1e-12, "trace {} vs {}", out.trace(), rho.trace());
        density_structure(&out, 1e-10)?;
    }
    Ok(())
}

pub fn bloch_round_trip(r: &mut ChaCha8Rng) -> Check {
    let d = r.random_range(2..=3);
    let rho = random::density(d, r);
    let b = bloch_from_density(&rho).map_err(|e| e.to_string())?;
    let back = density_from_bloch(&b).map_err(|e| e.to_string())?;
    let err = max_abs_diff(back.matrix(), rho.matrix());
    ensure!(err < 1e-12, "density round trip {err:e}");
    let b2 = bloch_from_density(&back).map_err(|e| e.to_string())?;
    let eb = b.vector().iter().zip(b2.vector()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    ensure!(eb < 1e-12, "Bloch round trip {eb:e}");
    if d == 2 {
        let pure = DensityOperator::from_state(&random::pure_state(2, r));
        let n = bloch_from_density(&pure).map_err(|e| e.to_string())?.norm();
        ensure!((n - 1.0).abs() < 1e-10, "pure qubit Bloch length {n}");
    }
    Ok(())
}

pub fn singlet_correlation(r: &mut ChaCha8Rng) -> Check {
    let rho = DensityOperator::from_state(&StateVector::singlet());
    let a = random::unit_vector(r);
    let b = random::unit_vector(r);
    let o = spin_along(a).map_err(|e| e.to_string())?.tensor(&spin_along(b).map_err(|e| e.to_string())?);
    let e = expectation(&o, &rho).map_err(|e| e.to_string())?;
    ensure!((e + dot(a, b)).abs() < 1e-12, "E = {e}, a·b = {}", dot(a, b));
    Ok(())
}

// ---------------------------------------------------------- kaon-dynamics

pub fn kaon_probability_completeness(r: &mut ChaCha8Rng) -> Check {
    let c = random_constants(r);
    let t = random_time(r, &c);
    let p = oscillation_probabilities(random_flavor(r), t, &c).map_err(|e| e.to_string())?;
    for x in [p.p_k0, p.p_k0bar, p.p_decayed] {
        ensure!((0.0..=1.0).contains(&x), "probability {x} at t = {t:e}");
    }
    let sum = p.p_k0 + p.p_k0bar + p.p_decayed;
    ensure!((sum - 1.0).abs() < 1e-12, "single sum {sum}");

    let ql = ActiveQuestion::new(random_flavor(r), random_time(r, &c)).unwrap();
    let qr = ActiveQuestion::new(random_flavor(r), random_time(r, &c)).unwrap();
    let pair = evolve_pair(ql.time, qr.time, &c).map_err(|e| e.to_string())?;
    let tbl = active_strangeness_joint(&pair, &ql, &qr, &c).map_err(|e| e.to_string())?;
    ensure!(tbl.p.iter().flatten().all(|x| (0.0..=1.0).contains(x)), "table {:?}", tbl.p);
    let total: f64 = tbl.p.iter().flatten().sum();
    ensure!((total - 1.0).abs() < 1e-12, "joint sum {total}");
    let three = active_strangeness_outcomes(&pair, &ql, &qr, &c).map_err(|e| e.to_string())?;
    ensure!(three.p.iter().flatten().all(|x| (-1e-12..=1.0).contains(x)), "three-outcome {:?}", three.p);
    ensure!((three.total() - 1.0).abs() < 1e-12, "three-outcome sum {}", three.total());
    Ok(())
}

pub fn kaon_norm_monotone(r: &mut ChaCha8Rng) -> Check {
    let c = random_constants(r);
    let (t1, t2) = (random_time(r, &c), random_time(r, &c));
    let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
    let f = random_flavor(r);
    let n1 = evolve_single(f, lo, &c).unwrap().norm_squared(&c);
    let n2 = evolve_single(f, hi, &c).unwrap().norm_squared(&c);
    ensure!(n2 <= n1 + 1e-15, "norm grew {n1} -> {n2} ({lo:e} -> {hi:e})");
    Ok(())
}

pub fn kaon_cp_symmetric_limit(r: &mut ChaCha8Rng) -> Check {
    let c = KaonConstants::cp_conserving();
    let t = random_time(r, &c);
    let a = oscillation_probabilities(FlavorState::K0, t, &c).unwrap();
    let b = oscillation_probabilities(FlavorState::K0bar, t, &c).unwrap();
    ensure!(
        (a.p_k0 - b.p_k0bar).abs() < 1e-15 && (a.p_k0bar - b.p_k0).abs() < 1e-15,
        "K0 {a:?} vs K0bar {b:?}"
    );
    let oracle = closed_form_survival(t, &c);
    ensure!((a.p_k0 - oracle).abs() < 1e-12, "closed form {oracle} vs {}", a.p_k0);
    Ok(())
}

pub fn kaon_equal_time_anticorrelation(r: &mut ChaCha8Rng) -> Check {
    let c = KaonConstants::cp_conserving();
    let t = random_time(r, &c);
    let pair = evolve_pair(t, t, &c).unwrap();
    for f in FlavorState::ALL {
        let p = pair.flavor_probability(f, f, &c);
        ensure!(p < 1e-12, "same flavour {f} at t = {t:e}: {p:e}");
    }
    Ok(())
}

pub fn kaon_undamped_limit(r: &mut ChaCha8Rng) -> Check {
    let dm = 10f64.powf(r.random_range(6.0..12.0));
    let c = KaonConstants::new(0.0, 0.0, dm, Complex64::new(0.0, 0.0)).unwrap();
    let t = r.random_range(0.0..50.0) / dm;
    let p = oscillation_probabilities(FlavorState::K0, t, &c).unwrap();
    let expect = 0.5 * (1.0 + (dm * t).cos());
    ensure!((p.p_k0 - expect).abs() < 1e-12 && p.p_decayed.abs() < 1e-12, "{p:?} vs {expect}");
    Ok(())
}

pub fn kaon_joint_matches_oracle(r: &mut ChaCha8Rng) -> Check {
    let c = random_constants(r);
    let ql = ActiveQuestion::new(random_flavor(r), random_time(r, &c)).unwrap();
    let qr = ActiveQuestion::new(random_flavor(r), random_time(r, &c)).unwrap();
    let pair = evolve_pair(ql.time, qr.time, &c).unwrap();
    let tbl = active_strangeness_joint(&pair, &ql, &qr, &c).map_err(|e| e.to_string())?;
    let oracle = brute_force_joint(&ql, &qr, &c);
    for i in 0..2 {
        for j in 0..2 {
            let d = (tbl.p[i][j] - oracle[i][j]).abs();
            ensure!(d < 1e-12, "entry ({i},{j}) {} vs oracle {} ({ql:?}, {qr:?})", tbl.p[i][j], oracle[i][j]);
        }
    }
    Ok(())
}

// -------------------------------------------------------------- bell-chsh

pub fn tsirelson(r: &mut ChaCha8Rng) -> Check {
    let rho = if r.random_bool(0.5) {
        DensityOperator::from_state(&random::pure_state(4, r))
    } else {
        random::density(4, r)
    };
    let s = quantum_chsh(&rho, &random_spin_config(r)).map_err(|e| e.to_string())?.s_value;
    ensure!(s.abs() <= QUANTUM_BOUND + 1e-9, "S = {s}");
    Ok(())
}

pub fn separable_within_classical(r: &mut ChaCha8Rng) -> Check {
    let k = r.random_range(1..=4);
    let mut parts = Vec::new();
    for _ in 0..k {
        parts.push((r.random::<f64>() + 1e-3, random::product_qubits(r)));
    }
    let total: f64 = parts.iter().map(|p| p.0).sum();
    let parts: Vec<_> = parts.into_iter().map(|(w, rho)| (w / total, rho)).collect();
    let rho = DensityOperator::mixture(&parts).map_err(|e| e.to_string())?;
    let s = quantum_chsh(&rho, &random_spin_config(r)).map_err(|e| e.to_string())?.s_value;
    ensure!(s.abs() <= CLASSICAL_BOUND + 1e-9, "separable S = {s}");
    Ok(())
}

pub fn product_up_down_within_classical(r: &mut ChaCha8Rng) -> Check {
    let up = StateVector::basis(2, 0).unwrap();
    let down = StateVector::basis(2, 1).unwrap();
    let rho = DensityOperator::from_state(&up.tensor(&down));
    let s = quantum_chsh(&rho, &random_spin_config(r)).map_err(|e| e.to_string())?.s_value;
    ensure!(s.abs() <= CLASSICAL_BOUND + 1e-9, "product S = {s}");
    Ok(())
}

pub fn lhv_mixture_within_classical(r: &mut ChaCha8Rng) -> Check {
    let strategies = LocalStrategy::all();
    let w: Vec<f64> = (0..16).map(|_| r.random::<f64>().powi(3)).collect();
    let total: f64 = w.iter().sum();
    let s: f64 = strategies.iter().zip(&w).map(|(st, wi)| st.chsh() * wi / total).sum();
    ensure!(s.abs() <= CLASSICAL_BOUND + 1e-12, "mixture S = {s}");
    Ok(())
}

pub fn scan_deterministic_across_workers(r: &mut ChaCha8Rng) -> Check {
    let c = if r.random_bool(0.5) { random_constants(r) } else { KaonConstants::no_decay() };
    let base = TimeGrid::default_for(&c).unwrap();
    let grid = TimeGrid::new(0.0, base.t_max * r.random_range(0.2..1.0), r.random_range(2..=4)).unwrap();
    let flavors = [0; 4].map(|_| random_flavor(r));
    let opts = |w| ScanOptions { workers: Some(w), ..ScanOptions::default() };
    let a = kaon_chsh_scan(&c, flavors, &grid, &opts(1)).map_err(|e| e.to_string())?;
    let b = kaon_chsh_scan(&c, flavors, &grid, &opts(3)).map_err(|e| e.to_string())?;
    ensure!(a == b, "scan differs between 1 and 3 workers");
    Ok(())
}

// ---------------------------------------------------------- hyperon-decay

pub fn random_species(r: &mut ChaCha8Rng) -> HyperonSpecies {
    HyperonSpecies::spin_half(r.random_range(-1.0..=1.0), random::unit_vector(r)).unwrap()
}

pub fn kraus_completeness(r: &mut ChaCha8Rng) -> Check {
    let ch = kraus_from_species(&random_species(r)).map_err(|e| e.to_string())?;
    let gap = decaybell::quantum::CMatrix::identity(2, 2) - ch.completeness();
    let min = hermitian_eigenvalues(&gap)[0];
    ensure!(min >= -1e-10, "Σ K†K exceeds identity by {:e}", -min);
    Ok(())
}

pub fn single_pdf_normalized(r: &mut ChaCha8Rng) -> Check {
    let rho = random::density(2, r);
    let h = random_species(r);
    let mut negative = None;
    let total = sphere_integral(12, |n| {
        let p = single_angular_pdf(&rho, &h, &DecayDirection::from_vector(n).unwrap()).unwrap();
        if p < 0.0 {
            negative = Some(p);
        }
        p
    });
    ensure!(negative.is_none(), "negative density {negative:?}");
    ensure!((total - 1.0).abs() < 1e-6, "pdf integrates to {total}");
    Ok(())
}

pub fn hyperon_deterministic_across_workers(r: &mut ChaCha8Rng) -> Check {
    let a = r.random_range(-1.0..=1.0);
    let b = r.random_range(-1.0..=1.0);
    let count = r.random_range(1..=9000);
    let seed = r.random();
    let one = sample_events_with_workers(a, b, count, seed, Some(1)).map_err(|e| e.to_string())?;
    let many = sample_events_with_workers(a, b, count, seed, Some(3)).map_err(|e| e.to_string())?;
    ensure!(one == many, "event batch differs between 1 and 3 workers");
    Ok(())
}

// ----------------------------------------------------------------- qkd-e91

pub fn random_eve(r: &mut ChaCha8Rng) -> Eavesdropper {
    match r.random_range(0..4) {
        0 => Eavesdropper::None,
        1 => Eavesdropper::intercept_resend(EveDirection::UniformRandom),
        2 => Eavesdropper::intercept_resend(EveDirection::Fixed(random::unit_vector(r))),
        _ => Eavesdropper::InterceptResend { direction: EveDirection::UniformRandom, fraction: r.random() },
    }
}

pub fn qkd_deterministic_and_consistent(r: &mut ChaCha8Rng) -> Check {
    let cfg = ProtocolConfig::new(r.random_range(1..=9000), r.random()).with_eve(random_eve(r));
    let one = run_session_with_workers(&cfg, Some(1)).map_err(|e| e.to_string())?;
    let many = run_session_with_workers(&cfg, Some(3)).map_err(|e| e.to_string())?;
    ensure!(one == many, "session differs between 1 and 3 workers");
    let keys = sift_keys(&one.transcript, &cfg);
    ensure!(keys.alice == one.alice_key && keys.bob == one.bob_key, "keys not recomputable from transcript");
    let (a, b) = (one.transcript.alice_record(), one.transcript.bob_record());
    let public = PublicAnnouncement::announce(&cfg, &a, &b).map_err(|e| e.to_string())?;
    let audited = audit(&cfg, &public, &a, &b).map_err(|e| e.to_string())?;
    ensure!(audited == one.report, "audit {audited:?} vs report {:?}", one.report);
    if let Some(q) = one.report.qber {
        ensure!((0.0..=1.0).contains(&q), "qber {q}");
    }
    Ok(())
}

// ---------------------------------------------------------------- registry

pub type CaseFn = fn(&mut ChaCha8Rng) -> Check;

/// `(name, cases, check)` for every randomized invariant.
pub const SUITES: &[(&str, usize, CaseFn)] = &[
    ("density operator structure", 10_000, density_invariants),
    ("channel trace/positivity preservation", 10_000, channel_preserves_positivity),
    ("partial trace of a product", 10_000, partial_trace_of_product),
    ("partial trace keeps trace", 10_000, partial_trace_keeps_trace),
    ("Bloch round trip", 10_000, bloch_round_trip),
    ("singlet correlation -a·b", 10_000, singlet_correlation),
    ("kaon probability completeness", 10_000, kaon_probability_completeness),
    ("kaon norm monotonicity", 10_000, kaon_norm_monotone),
    ("kaon K0/K0bar symmetry without CP violation", 10_000, kaon_cp_symmetric_limit),
    ("kaon equal-time anti-correlation", 10_000, kaon_equal_time_anticorrelation),
    ("kaon undamped oscillation", 10_000, kaon_undamped_limit),
    ("kaon joint table vs 4-amplitude oracle", 10_000, kaon_joint_matches_oracle),
    ("Tsirelson bound", 10_000, tsirelson),
    ("separable states within 2", 10_000, separable_within_classical),
    ("product state within 2", 10_000, product_up_down_within_classical),
    ("local strategy mixtures within 2", 10_000, lhv_mixture_within_classical),
    ("scan determinism across workers", 10_000, scan_deterministic_across_workers),
    ("Kraus completeness", 10_000, kraus_completeness),
    ("single angular pdf normalized", 10_000, single_pdf_normalized),
    ("hyperon sampling across workers", 10_000, hyperon_deterministic_across_workers),
    ("qkd determinism, sifting and audit", 10_000, qkd_deterministic_and_consistent),
];

/// Runs `cases` cases of `check` from seeds derived from `seed`; returns the
/// first failure with its case index.
pub fn run_cases(check: CaseFn, cases: usize, seed: u64) -> Result<(), (usize, String)> {
    let mut master = rng(seed);
    for i in 0..cases {
        let mut r = rng(master.random());
        check(&mut r).map_err(|e| (i, e))?;
    }
    Ok(())
}

/// One proptest per check, seeded from a proptest-drawn `u64`.
#[macro_export]
macro_rules! seeded_props {
    ($cases:expr; $($name:ident => $check:path),* $(,)?) => {
        proptest::proptest! {
            #![proptest_config(proptest::test_runner::Config::with_cases($cases))]
            $(
                #[test]
                fn $name(seed in proptest::prelude::any::<u64>()) {
                    let mut r = $crate::common::rng(seed);
                    if let Err(e) = $check(&mut r) {
                        return Err(proptest::test_runner::TestCaseError::fail(e));
                    }
                }
            )*
        }
    };
}
