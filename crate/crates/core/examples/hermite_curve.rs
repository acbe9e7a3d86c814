//! Evaluate a pattern curve: anchors, segments, points and tangents.
//!
//! cargo run -p conducting --example hermite_curve

use conducting::{Pattern, View};

fn main() -> conducting::Result<()> {
    // One beat: a preparation on top, an ictus below, passed in opposite directions.
    let pattern = Pattern::from_xyr(&[(0.0, 1.0, 1.2), (0.0, -1.0, -1.2)], View::Conductor)?;

    for i in 0..pattern.segment_count() {
        let seg = pattern.segment(i)?;
        println!(
            "segment {i}: {} -> {}, tangents {} / {}",
            seg.p0, seg.p1, seg.m0, seg.m1
        );
    }

    println!("\n{:>6} {:>22} {:>22}", "s", "g(s)", "g'(s)");
    for k in 0..=8 {
        let s = k as f64 / 4.0;
        let p = pattern.curve_point(s)?;
        let v = pattern.curve_tangent(s)?;
        println!(
            "{s:>6.2} ({:>9.5}, {:>9.5}) ({:>9.5}, {:>9.5})",
            p.x, p.y, v.x, v.y
        );
    }

    // The curve is periodic with period 2N in the curve parameter.
    let s = 0.3;
    println!(
        "\ng({s}) = {}, g({}) = {}",
        pattern.curve_point(s)?,
        s + pattern.period(),
        pattern.curve_point(s + pattern.period())?
    );
    Ok(())
}
