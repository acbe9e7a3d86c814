//! Deterministic SVG diagrams and sample tables.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{Pattern, Point2, Role};
use crate::kinematics::{Motion, MotionSample};
use crate::timing::TimingLaw;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    pub margin: f64,
    pub stroke_width: f64,
    pub show_anchors: bool,
    pub show_labels: bool,
    pub samples_per_segment: usize,
    /// Speed plots only: overlay the spatial speed of the tip.
    pub show_spatial_speed: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 480,
            height: 480,
            margin: 32.0,
            stroke_width: 2.0,
            show_anchors: true,
            show_labels: true,
            samples_per_segment: 32,
            show_spatial_speed: true,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::domain("width and height must be positive"));
        }
        let room = self.width.min(self.height) as f64;
        if !(self.margin.is_finite() && self.margin >= 0.0 && 2.0 * self.margin < room) {
            return Err(Error::domain(format!(
                "margin {} leaves no room on a {}x{} canvas",
                self.margin, self.width, self.height
            )));
        }
        if !(self.stroke_width.is_finite() && self.stroke_width > 0.0) {
            return Err(Error::domain("stroke width must be positive"));
        }
        if self.samples_per_segment < 8 {
            return Err(Error::domain(format!(
                "samples per segment must be at least 8, got {}",
                self.samples_per_segment
            )));
        }
        Ok(())
    }
}

/// Uniform-scale map from the pattern plane to SVG user units, y flipped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub scale: f64,
    pub origin_x: f64,
    pub origin_y: f64,
}

impl Viewport {
    /// Fits `points` into the canvas inside the margin, centred.
    pub fn fit<'a>(points: impl IntoIterator<Item = &'a Point2>, opts: &RenderOptions) -> Self {
        let (mut min, mut max) = (
            Point2::new(f64::INFINITY, f64::INFINITY),
            Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for p in points {
            min = Point2::new(min.x.min(p.x), min.y.min(p.y));
            max = Point2::new(max.x.max(p.x), max.y.max(p.y));
        }
        if !min.is_finite() {
            min = Point2::ZERO;
            max = Point2::ZERO;
        }
        let inner_w = opts.width as f64 - 2.0 * opts.margin;
        let inner_h = opts.height as f64 - 2.0 * opts.margin;
        let (bw, bh) = (max.x - min.x, max.y - min.y);
        let scale = match (bw > 0.0, bh > 0.0) {
            (true, true) => (inner_w / bw).min(inner_h / bh),
            (true, false) => inner_w / bw,
            (false, true) => inner_h / bh,
            (false, false) => 1.0,
        };
        let cx = 0.5 * (min.x + max.x);
        let cy = 0.5 * (min.y + max.y);
        Viewport {
            scale,
            origin_x: opts.width as f64 / 2.0 - scale * cx,
            origin_y: opts.height as f64 / 2.0 + scale * cy,
        }
    }

    pub fn map(&self, p: Point2) -> Point2 {
        Point2::new(
            self.origin_x + self.scale * p.x,
            self.origin_y - self.scale * p.y,
        )
    }
}

/// The closed curve sampled at `samples_per_segment` points per segment,
/// with the starting point repeated at the end.
pub fn curve_polyline(pattern: &Pattern, samples_per_segment: usize) -> Result<Vec<Point2>> {
    if samples_per_segment == 0 {
        return Err(Error::domain("samples per segment must be positive"));
    }
    let total = pattern.segment_count() * samples_per_segment;
    (0..=total)
        .map(|k| pattern.curve_point(k as f64 / samples_per_segment as f64))
        .collect()
}

/// Layout of a rendered curve diagram, exposed so callers can relate SVG
/// coordinates back to the pattern plane.
pub fn curve_viewport(pattern: &Pattern, opts: &RenderOptions) -> Result<Viewport> {
    opts.validate()?;
    let polyline = curve_polyline(pattern, opts.samples_per_segment)?;
    let anchors: Vec<Point2> = pattern.anchors().iter().map(|a| a.position).collect();
    Ok(Viewport::fit(polyline.iter().chain(&anchors), opts))
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn svg_open(out: &mut String, opts: &RenderOptions) {
    let (w, h) = (opts.width, opts.height);
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
}

fn points_attr(points: impl IntoIterator<Item = Point2>) -> String {
    points
        .into_iter()
        .map(|p| format!("{},{}", num(p.x), num(p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Static diagram of the pattern curve with its anchors.
///
/// Preparations are open circles, icti filled discs.
pub fn render_curve(pattern: &Pattern, opts: &RenderOptions) -> Result<String> {
    let viewport = curve_viewport(pattern, opts)?;
    let polyline = curve_polyline(pattern, opts.samples_per_segment)?;
    let mut out = String::new();
    svg_open(&mut out, opts);

    let vertices = &polyline[..polyline.len() - 1];
    let mut d = String::new();
    for (i, p) in vertices.iter().enumerate() {
        let q = viewport.map(*p);
        let _ = write!(
            d,
            "{}{} {} ",
            if i == 0 { "M" } else { "L" },
            num(q.x),
            num(q.y)
        );
    }
    d.push('Z');
    let _ = writeln!(
        out,
        "  <path class=\"pattern-curve\" d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\" stroke-linejoin=\"round\"/>",
        num(opts.stroke_width)
    );

    let radius = num(2.0 * opts.stroke_width + 2.0);
    if opts.show_anchors {
        out.push_str("  <g class=\"anchors\">\n");
        for anchor in pattern.anchors() {
            let q = viewport.map(anchor.position);
            let (class, fill) = match anchor.role {
                Role::Preparation => ("prep", "white"),
                Role::Ictus => ("ictus", "black"),
            };
            let _ = writeln!(
                out,
                "    <circle class=\"anchor {class}\" cx=\"{}\" cy=\"{}\" r=\"{radius}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"{}\"/>",
                num(q.x),
                num(q.y),
                num(opts.stroke_width / 2.0)
            );
        }
        out.push_str("  </g>\n");
    }
    if opts.show_labels {
        out.push_str("  <g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\">\n");
        let offset = 2.0 * opts.stroke_width + 6.0;
        for (i, anchor) in pattern.anchors().iter().enumerate() {
            let q = viewport.map(anchor.position);
            let label = match anchor.role {
                Role::Preparation => format!("P{}", i / 2 + 1),
                Role::Ictus => format!("I{}", i / 2 + 1),
            };
            let _ = writeln!(
                out,
                "    <text x=\"{}\" y=\"{}\">{label}</text>",
                num(q.x + offset),
                num(q.y - offset)
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Phase rate over one cycle, with vertical gridlines at every segment
/// boundary. The optional spatial speed curve is scaled to its own peak.
pub fn render_speed_plot(
    pattern: &Pattern,
    law: &TimingLaw,
    opts: &RenderOptions,
) -> Result<String> {
    opts.validate()?;
    let motion = Motion::new(pattern, law)?;
    let profile = motion.speed_profile(opts.samples_per_segment)?;
    let tempo = law.tempo();
    let period = tempo.cycle_duration();

    let left = opts.margin;
    let right = opts.width as f64 - opts.margin;
    let top = opts.margin;
    let bottom = opts.height as f64 - opts.margin;
    let x_of = |t: f64| left + (right - left) * t / period;
    let y_scale = |peak: f64| {
        let peak = if peak > 0.0 { peak * 1.1 } else { 1.0 };
        move |v: f64| bottom - (bottom - top) * v / peak
    };
    let rate_peak = profile.iter().map(|r| r.phase_rate).fold(0.0, f64::max);
    let speed_peak = profile.iter().map(|r| r.spatial_speed).fold(0.0, f64::max);
    let rate_y = y_scale(rate_peak);

    let mut out = String::new();
    svg_open(&mut out, opts);
    out.push_str("  <g class=\"grid\" stroke-width=\"1\">\n");
    for m in 0..=tempo.segment_count() {
        let x = num(x_of(m as f64 * tempo.segment_duration()));
        let (class, colour) = if m % 2 == 1 {
            ("grid ictus", "#888888")
        } else {
            ("grid prep", "#dddddd")
        };
        let _ = writeln!(
            out,
            "    <line class=\"{class}\" x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"{colour}\"/>",
            num(top),
            num(bottom)
        );
    }
    out.push_str("  </g>\n");
    let _ = writeln!(
        out,
        "  <line class=\"axis\" x1=\"{}\" y1=\"{b}\" x2=\"{}\" y2=\"{b}\" stroke=\"black\"/>",
        num(left),
        num(right),
        b = num(bottom)
    );
    let _ = writeln!(
        out,
        "  <polyline class=\"phase-rate\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>",
        points_attr(profile.iter().map(|r| Point2::new(x_of(r.t), rate_y(r.phase_rate)))),
        num(opts.stroke_width)
    );
    if opts.show_spatial_speed {
        let speed_y = y_scale(speed_peak);
        let _ = writeln!(
            out,
            "  <polyline class=\"spatial-speed\" points=\"{}\" fill=\"none\" stroke=\"#3366cc\" stroke-dasharray=\"6 4\" stroke-width=\"{}\"/>",
            points_attr(profile.iter().map(|r| Point2::new(x_of(r.t), speed_y(r.spatial_speed)))),
            num(opts.stroke_width)
        );
    }
    if opts.show_labels {
        out.push_str("  <g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\">\n");
        let _ = writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\">phase rate, peak {} /s (beta = {}, {} bpm)</text>",
            num(left),
            num(top - 8.0),
            num(rate_peak),
            law.beta(),
            tempo.bpm()
        );
        if opts.show_spatial_speed {
            let _ = writeln!(
                out,
                "    <text x=\"{}\" y=\"{}\" fill=\"#3366cc\">spatial speed, peak {} units/s</text>",
                num(left),
                num(bottom + 20.0),
                num(speed_peak)
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SampleFormat {
    /// Comma-separated with a header row.
    #[default]
    Table,
    /// JSON array of sample objects.
    Structured,
}

pub const TABLE_HEADER: &str = "t,s,x,y,vx,vy,phase_rate,spatial_speed";

/// Writes samples at full precision: every number parses back to the same `f64`.
pub fn export_samples(samples: &[MotionSample], format: SampleFormat) -> Result<String> {
    if samples.is_empty() {
        return Err(Error::domain("no samples to export"));
    }
    match format {
        SampleFormat::Table => {
            let mut out = String::from(TABLE_HEADER);
            out.push('\n');
            for m in samples {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    m.t,
                    m.s,
                    m.position.x,
                    m.position.y,
                    m.velocity.x,
                    m.velocity.y,
                    m.phase_rate,
                    m.spatial_speed
                );
            }
            Ok(out)
        }
        SampleFormat::Structured => {
            let mut out = serde_json::to_string_pretty(samples).expect("samples are serializable");
            out.push('\n');
            Ok(out)
        }
    }
}
