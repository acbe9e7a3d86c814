//! Sample the baton tip over one cycle and draw a trail behind it.
//!
//! cargo run -p conducting --example baton_motion

use conducting::{default_pattern, Motion, Tempo, TimingLaw};

fn main() -> conducting::Result<()> {
    let pattern = default_pattern(3)?;
    let law = TimingLaw::new(Tempo::new(3, 90.0)?, 0.6)?;
    let motion = Motion::new(&pattern, &law)?;
    let period = law.tempo().cycle_duration();

    println!(
        "{:>7} {:>8} {:>20} {:>10} {:>10}",
        "t", "s", "position", "phase/s", "speed"
    );
    for m in motion.sample_trajectory(0.0, period, 13)? {
        println!(
            "{:>7.4} {:>8.4} ({:>8.4}, {:>8.4}) {:>10.4} {:>10.4}",
            m.t, m.s, m.position.x, m.position.y, m.phase_rate, m.spatial_speed
        );
    }

    let trail = motion.trail(1.3, 0.25, 6)?;
    println!(
        "\ntrail over the last {} s before t = {}:",
        trail.duration, trail.end_time
    );
    for p in &trail.points {
        println!("  {p}");
    }
    Ok(())
}
