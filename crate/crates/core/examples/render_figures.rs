//! Write the curve diagram and speed plot of every built-in pattern as SVG.
//!
//! cargo run -p conducting --example render_figures -- [output dir]

use std::path::PathBuf;

use conducting::document::DEFAULT_BEATS;
use conducting::render::{render_curve, render_speed_plot, RenderOptions};
use conducting::{default_pattern, Tempo, TimingLaw};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("conducting-figures"));
    std::fs::create_dir_all(&dir)?;
    let opts = RenderOptions::default();

    for beats in DEFAULT_BEATS {
        let pattern = default_pattern(beats)?;
        let law = TimingLaw::new(Tempo::new(beats, 120.0)?, 0.7)?;
        let curve = dir.join(format!("curve_{beats}.svg"));
        let speed = dir.join(format!("speed_{beats}.svg"));
        std::fs::write(&curve, render_curve(&pattern, &opts)?)?;
        std::fs::write(&speed, render_speed_plot(&pattern, &law, &opts)?)?;
        println!("{}\n{}", curve.display(), speed.display());
    }
    Ok(())
}
