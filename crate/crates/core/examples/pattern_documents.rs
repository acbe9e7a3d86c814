//! Built-in patterns, the document format, validation and reflection.
//!
//! cargo run -p conducting --example pattern_documents

use conducting::document::{default_document, DEFAULT_BEATS};
use conducting::{parse_pattern, reflect_pattern, serialize_pattern, validate_pattern, Point2};

fn main() -> conducting::Result<()> {
    for beats in DEFAULT_BEATS {
        let doc = default_document(beats)?;
        let pattern = doc.to_pattern()?;
        let report = validate_pattern(&pattern, 1e-9)?;
        println!(
            "{:<20} {} anchors, {} parameters, {} errors, {} warnings",
            doc.name.as_deref().unwrap_or("?"),
            pattern.anchors().len(),
            pattern.parameter_count(),
            report.error_count(),
            report.warnings().count()
        );
    }

    let pattern = parse_pattern(&default_document(2)?.to_json())?;
    println!(
        "\ncanonical 2-beat document:\n{}",
        serialize_pattern(&pattern)
    );

    let mirrored = reflect_pattern(&pattern);
    println!("performer's view of P1..I2:");
    for (a, b) in pattern.anchors().iter().zip(mirrored.anchors()) {
        println!(
            "  {} r={:+} -> {} r={:+}",
            a.position, a.roundness, b.position, b.roundness
        );
    }

    // Drag the second preparation below its ictus and look at the findings.
    let mut broken = pattern.clone();
    broken.set_position(2, Point2::new(0.5, -0.9))?;
    println!("\nafter dragging P2 down:");
    for finding in validate_pattern(&broken, 1e-9)?.findings {
        println!("  {finding}");
    }
    Ok(())
}
