//! Generalized Bloch vectors and a decay channel written as Kraus operators.

use decaybell::hyperon::{kraus_from_species, HyperonSpecies};
use decaybell::quantum::{
    apply_channel, bloch_from_density, density_from_bloch, gellmann_basis, BlochExpansion, DensityOperator,
    StateVector,
};

fn main() -> decaybell::Result<()> {
    // qutrit: basis size and the length of a pure state's vector
    let basis = gellmann_basis(3)?;
    let psi = StateVector::basis(3, 0)?;
    let b = bloch_from_density(&DensityOperator::from_state(&psi))?;
    println!("qutrit: {} generators, |b| = {:.6} for |0⟩", basis.len(), b.norm());
    println!("  pure-state length √(d(d−1)/2) = {:.6}", BlochExpansion::pure_state_length(3));

    // qubit polarized along +z, partly depolarized
    let rho = density_from_bloch(&BlochExpansion::new(2, vec![0.0, 0.0, 0.6])?)?;
    println!("\nqubit with b = (0, 0, 0.6): eigenvalues {:?}", rho.eigenvalues());

    // decay channel with asymmetry 0.64 along z and along x
    for axis in [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]] {
        let ch = kraus_from_species(&HyperonSpecies::spin_half(0.64, axis)?)?;
        let out = apply_channel(&ch, &rho)?;
        println!("  decay axis {axis:?}: surviving trace {:.4}", out.trace());
    }
    Ok(())
}
