//! Effects of a non-zero ε: overlapping mass eigenstates, the semileptonic
//! charge asymmetry and the long-time flavour imbalance.

use decaybell::kaon::{
    mass_eigenstate_overlap, oscillation_probabilities, semileptonic_asymmetry, FlavorState, KaonConstants,
};
use num_complex::Complex64;

fn main() -> decaybell::Result<()> {
    for eps in [Complex64::new(1e-3, 0.0), Complex64::new(1e-3, 1e-3), Complex64::new(0.0, 1e-3)] {
        println!(
            "ε = {eps:.1e}: ⟨K_S|K_L⟩ = {:.9e}, δ_l = {:.9e}",
            mass_eigenstate_overlap(eps),
            semileptonic_asymmetry(eps)
        );
    }

    let c = KaonConstants::physical();
    println!("\nphysical preset, ε = {:.4e}", c.epsilon);
    let t = 20.0 / c.gamma_s;
    for f in FlavorState::ALL {
        let p = oscillation_probabilities(f, t, &c)?;
        let surviving = p.p_k0 + p.p_k0bar;
        println!(
            "  born {f:<5} at t = 20/Γ_S: K0 share {:.6}, K0bar share {:.6}",
            p.p_k0 / surviving,
            p.p_k0bar / surviving
        );
    }
    Ok(())
}
