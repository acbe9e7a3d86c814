//! The quintic ease and the phase map for a few speed balances.
//!
//! cargo run -p conducting --example timing_law

use conducting::timing::{ease, ease_coefficients};
use conducting::{Tempo, TimingLaw};

fn main() -> conducting::Result<()> {
    for beta in [0.0, 0.5, 0.7, 1.0] {
        let (a, b) = (1.0 - beta, 1.0 + beta);
        let c = ease_coefficients(a, b)?;
        println!(
            "beta {beta:.1}: prep->ictus ease(a={a:.1}, b={b:.1}) c3={:+.3} c4={:+.3} c5={:+.3}, ease(0.5)={:.5}",
            c.c3,
            c.c4,
            c.c5,
            ease(a, b, 0.5)?
        );
    }

    let law = TimingLaw::new(Tempo::new(4, 120.0)?, 0.7)?;
    let tempo = law.tempo();
    println!(
        "\n4 beats at 120 bpm: T = {} s, Δ = {} s",
        tempo.cycle_duration(),
        tempo.segment_duration()
    );
    println!("{:>7} {:>10} {:>12}", "t", "phase", "phase rate");
    let steps = 16;
    for k in 0..=steps {
        let t = tempo.cycle_duration() * k as f64 / steps as f64;
        println!(
            "{t:>7.4} {:>10.5} {:>12.5}",
            law.phase(t)?,
            law.phase_rate(t)?
        );
    }
    Ok(())
}
