//! Key-distribution sessions with and without an intercept-resend attacker,
//! and the public-data audit of the report.

use decaybell::qkd::{audit, run_session, Eavesdropper, EveDirection, ProtocolConfig, PublicAnnouncement};

fn main() -> decaybell::Result<()> {
    let eves = [
        Eavesdropper::None,
        Eavesdropper::InterceptResend { direction: EveDirection::UniformRandom, fraction: 0.2 },
        Eavesdropper::intercept_resend(EveDirection::UniformRandom),
        Eavesdropper::intercept_resend(EveDirection::Fixed([0.0, 0.0, 1.0])),
    ];
    for eve in eves {
        let cfg = ProtocolConfig::new(100_000, 42).with_eve(eve);
        let out = run_session(&cfg)?;
        let r = out.report;
        println!(
            "{:<14} S = {:.3} ± {:.3}  QBER = {:.4}  key bits = {:>5}  secure = {}",
            eve.to_string(),
            r.s_estimate.unwrap_or(f64::NAN),
            r.s_stderr.unwrap_or(f64::NAN),
            r.qber.unwrap_or(f64::NAN),
            r.sifted_length,
            r.secure
        );

        let (a, b) = (out.transcript.alice_record(), out.transcript.bob_record());
        let public = PublicAnnouncement::announce(&cfg, &a, &b)?;
        assert_eq!(audit(&cfg, &public, &a, &b)?, r);
    }
    Ok(())
}
