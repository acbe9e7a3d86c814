//! Beat events for a metronome-style schedule, with the downbeat moved to t = 0.
//!
//! cargo run -p conducting --example beat_schedule

use conducting::{default_pattern, Motion, Role, Tempo, TimingLaw};

fn main() -> conducting::Result<()> {
    let pattern = default_pattern(4)?;
    let law = TimingLaw::new(Tempo::new(4, 100.0)?, 0.6)?;
    let delta = law.tempo().segment_duration();

    // Shift by one segment so ictus 1 lands on t = 0.
    let motion = Motion::new(&pattern, &law)?.with_start_offset(delta)?;
    for event in motion.beat_events(0.0, 2.0 * law.tempo().cycle_duration())? {
        let label = match event.kind {
            Role::Preparation => format!("  prep {}", event.beat_index),
            Role::Ictus if event.is_downbeat() => "ICTUS 1 (downbeat)".to_string(),
            Role::Ictus => format!("ictus {}", event.beat_index),
        };
        let tip = motion.position(event.time)?;
        println!(
            "cycle {} t = {:>6.3} s  {label:<20} tip at {tip}",
            event.cycle, event.time
        );
    }
    Ok(())
}
