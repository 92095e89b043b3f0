//! Strangeness oscillation of a kaon born as K⁰, for each bundled preset.

use decaybell::kaon::{oscillation_probabilities, FlavorState, KaonConstants};

fn main() -> decaybell::Result<()> {
    for (name, c) in [
        ("physical", KaonConstants::physical()),
        ("cp-conserving", KaonConstants::cp_conserving()),
        ("no-decay", KaonConstants::no_decay()),
    ] {
        println!("{name}  (hash {}…)", &c.hash()[..12]);
        println!("  t·Δm      p(K0)     p(K0bar)  decayed");
        for i in 0..=8 {
            let t = i as f64 * std::f64::consts::FRAC_PI_2 / c.delta_m();
            let p = oscillation_probabilities(FlavorState::K0, t, &c)?;
            println!(
                "  {:<8.4}  {:.6}  {:.6}  {:.6}",
                t * c.delta_m(),
                p.p_k0,
                p.p_k0bar,
                p.p_decayed
            );
        }
    }
    Ok(())
}
