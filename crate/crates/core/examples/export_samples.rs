//! Export baton samples as a CSV table and as JSON.
//!
//! cargo run -p conducting --example export_samples

use conducting::render::{export_samples, SampleFormat};
use conducting::{default_pattern, Motion, Tempo, TimingLaw};

fn main() -> conducting::Result<()> {
    let pattern = default_pattern(2)?;
    let law = TimingLaw::new(Tempo::new(2, 60.0)?, 0.5)?;
    let samples = Motion::new(&pattern, &law)?.sample_trajectory(0.0, 2.0, 5)?;
    print!("{}", export_samples(&samples, SampleFormat::Table)?);
    println!();
    print!(
        "{}",
        export_samples(&samples[..1], SampleFormat::Structured)?
    );
    Ok(())
}
