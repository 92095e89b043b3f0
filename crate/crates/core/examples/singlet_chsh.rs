//! CHSH value of the spin singlet, the standard angle choice and a sweep.

use decaybell::bell::{quantum_chsh, ChshConfig, QUANTUM_BOUND};
use decaybell::quantum::{DensityOperator, StateVector};

fn main() -> decaybell::Result<()> {
    let rho = DensityOperator::from_state(&StateVector::singlet());

    let r = quantum_chsh(&rho, &ChshConfig::optimal_planar())?;
    println!("angles 0°, 45°, 90°, 135°");
    println!("  E = {:?}", r.correlations.map(|e| (e * 1e6).round() / 1e6));
    println!("  S = {:.12}  (2√2 = {QUANTUM_BOUND:.12})", r.s_value);

    // rotate Bob's pair of settings away from the optimum
    println!("\nBob offset   S");
    for k in 0..=8 {
        let off = (k as f64 * 11.25).to_radians();
        let q = std::f64::consts::FRAC_PI_4;
        let cfg = ChshConfig::planar([0.0, q + off, 2.0 * q, 3.0 * q + off]);
        let r = quantum_chsh(&rho, &cfg)?;
        println!("{:>8.2}°  {:+.6}", k as f64 * 11.25, r.s_value);
    }
    Ok(())
}
