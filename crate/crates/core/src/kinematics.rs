//! Baton motion: the pattern curve composed with the timing law.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::geometry::{Pattern, Point2, Role, Vector2};
use crate::timing::TimingLaw;

/// One evaluation of the baton motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotionSample {
    pub t: f64,
    pub s: f64,
    pub position: Point2,
    pub velocity: Vector2,
    pub phase_rate: f64,
    pub spatial_speed: f64,
}

/// One row of a speed profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedSample {
    pub t: f64,
    pub phase_rate: f64,
    pub spatial_speed: f64,
}

/// A preparation or ictus instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeatEvent {
    /// 1-based beat within the cycle.
    pub beat_index: u32,
    pub kind: Role,
    /// 0-based cycle the event belongs to.
    pub cycle: u64,
    /// Playback time in seconds.
    pub time: f64,
    /// Unreduced curve parameter at the event; an integer.
    pub curve_parameter: f64,
}

impl BeatEvent {
    pub fn is_downbeat(&self) -> bool {
        self.kind == Role::Ictus && self.beat_index == 1
    }
}

/// Recent history of the baton tip, oldest point first.
#[derive(Debug, Clone, PartialEq)]
pub struct Trail {
    pub points: Vec<Point2>,
    pub duration: f64,
    pub end_time: f64,
}

/// A pattern driven by a timing law.
///
/// Times passed to the methods are playback times. With a start offset `o`
/// the motion is evaluated at `t + o`, so an offset of one segment duration
/// puts the downbeat ictus at playback time zero.
#[derive(Debug, Clone, Copy)]
pub struct Motion<'a> {
    pattern: &'a Pattern,
    law: &'a TimingLaw,
    start_offset: f64,
}

impl<'a> Motion<'a> {
    pub fn new(pattern: &'a Pattern, law: &'a TimingLaw) -> Result<Self> {
        let law_beats = law.tempo().beats();
        if pattern.beats() != law_beats {
            return Err(Error::BeatsMismatch {
                pattern: pattern.beats(),
                law: law_beats,
            });
        }
        Ok(Motion {
            pattern,
            law,
            start_offset: 0.0,
        })
    }

    pub fn with_start_offset(mut self, offset: f64) -> Result<Self> {
        ensure_finite("start offset", offset)?;
        if offset < 0.0 {
            return Err(Error::domain(format!(
                "start offset must be non-negative, got {offset}"
            )));
        }
        self.start_offset = offset;
        Ok(self)
    }

    pub fn pattern(&self) -> &Pattern {
        self.pattern
    }

    pub fn law(&self) -> &TimingLaw {
        self.law
    }

    pub fn start_offset(&self) -> f64 {
        self.start_offset
    }

    fn motion_time(&self, t: f64) -> Result<f64> {
        ensure_finite("time", t)?;
        if t < 0.0 {
            return Err(Error::domain(format!("time must be non-negative, got {t}")));
        }
        Ok(t + self.start_offset)
    }

    /// `γ(t) = g(f(t))`.
    pub fn position(&self, t: f64) -> Result<Point2> {
        let s = self.law.phase(self.motion_time(t)?)?;
        self.pattern.curve_point(s)
    }

    /// `γ'(t) = g'(f(t)) f'(t)`.
    pub fn velocity(&self, t: f64) -> Result<Vector2> {
        Ok(self.sample(t)?.velocity)
    }

    pub fn sample(&self, t: f64) -> Result<MotionSample> {
        let tm = self.motion_time(t)?;
        let s = self.law.phase(tm)?;
        let phase_rate = self.law.phase_rate(tm)?;
        let velocity = self.pattern.curve_tangent(s)? * phase_rate;
        Ok(MotionSample {
            t,
            s,
            position: self.pattern.curve_point(s)?,
            velocity,
            phase_rate,
            spatial_speed: velocity.norm(),
        })
    }

    /// `count` samples evenly spaced over `[t0, t1]`, both ends included.
    pub fn sample_trajectory(&self, t0: f64, t1: f64, count: usize) -> Result<Vec<MotionSample>> {
        check_window(t0, t1)?;
        if count < 2 {
            return Err(Error::domain(format!(
                "sample count must be at least 2, got {count}"
            )));
        }
        uniform_times(t0, t1, count)
            .map(|t| self.sample(t))
            .collect()
    }

    /// One cycle at `samples_per_segment` points per half-beat, plus the closing point.
    ///
    /// Sample `k` sits at `(k / samples_per_segment) Δ`, so every segment
    /// boundary is hit exactly.
    pub fn speed_profile(&self, samples_per_segment: usize) -> Result<Vec<SpeedSample>> {
        if samples_per_segment < 2 {
            return Err(Error::domain(format!(
                "samples per segment must be at least 2, got {samples_per_segment}"
            )));
        }
        let delta = self.law.tempo().segment_duration();
        let total = self.law.tempo().segment_count() * samples_per_segment;
        (0..=total)
            .map(|k| {
                let t = (k as f64 / samples_per_segment as f64) * delta;
                let m = self.sample(t)?;
                Ok(SpeedSample {
                    t,
                    phase_rate: m.phase_rate,
                    spatial_speed: m.spatial_speed,
                })
            })
            .collect()
    }

    /// Beat events with playback time in `[t0, t1)`.
    pub fn beat_events(&self, t0: f64, t1: f64) -> Result<Vec<BeatEvent>> {
        beat_events_with_offset(self.law, t0, t1, self.start_offset)
    }

    /// The tip's path over the last `duration` seconds, clipped at time zero.
    pub fn trail(&self, end_time: f64, duration: f64, count: usize) -> Result<Trail> {
        ensure_finite("end time", end_time)?;
        if end_time < 0.0 {
            return Err(Error::domain(format!(
                "end time must be non-negative, got {end_time}"
            )));
        }
        if !(duration.is_finite() && duration > 0.0) {
            return Err(Error::domain(format!(
                "trail duration must be positive, got {duration}"
            )));
        }
        if count < 2 {
            return Err(Error::domain(format!(
                "trail point count must be at least 2, got {count}"
            )));
        }
        let start = (end_time - duration).max(0.0);
        let points = if start == end_time {
            vec![self.position(end_time)?]
        } else {
            uniform_times(start, end_time, count)
                .map(|t| self.position(t))
                .collect::<Result<_>>()?
        };
        Ok(Trail {
            points,
            duration,
            end_time,
        })
    }
}

/// Beat events of a timing law in `[t0, t1)`, with the cycle starting at `P_1` at `t = 0`.
pub fn beat_events(law: &TimingLaw, t0: f64, t1: f64) -> Result<Vec<BeatEvent>> {
    beat_events_with_offset(law, t0, t1, 0.0)
}

fn beat_events_with_offset(
    law: &TimingLaw,
    t0: f64,
    t1: f64,
    offset: f64,
) -> Result<Vec<BeatEvent>> {
    check_window(t0, t1)?;
    let tempo = law.tempo();
    let segments = tempo.segment_count() as u64;
    let period = tempo.cycle_duration();
    let delta = tempo.segment_duration();
    // Boundaries are enumerated in motion time; start one early to absorb rounding.
    let first = ((t0 + offset) / delta).floor().max(1.0) as u64 - 1;
    let mut events = Vec::new();
    for boundary in first.. {
        let cycle = boundary / segments;
        let j = boundary % segments;
        let time = cycle as f64 * period + j as f64 * delta - offset;
        if time >= t1 {
            break;
        }
        if time < t0 {
            continue;
        }
        let (kind, beat_index) = if j.is_multiple_of(2) {
            (Role::Preparation, (j / 2 + 1) as u32)
        } else {
            (Role::Ictus, j.div_ceil(2) as u32)
        };
        events.push(BeatEvent {
            beat_index,
            kind,
            cycle,
            time,
            curve_parameter: boundary as f64,
        });
    }
    Ok(events)
}

fn check_window(t0: f64, t1: f64) -> Result<()> {
    ensure_finite("t0", t0)?;
    ensure_finite("t1", t1)?;
    if t0 < 0.0 || t0 >= t1 {
        return Err(Error::domain(format!(
            "time window must satisfy 0 <= t0 < t1, got [{t0}, {t1}]"
        )));
    }
    Ok(())
}

/// `count` evenly spaced times with the last one exactly `t1`.
fn uniform_times(t0: f64, t1: f64, count: usize) -> impl Iterator<Item = f64> {
    let last = count - 1;
    (0..count).map(move |i| {
        if i == last {
            t1
        } else {
            t0 + (t1 - t0) * (i as f64 / last as f64)
        }
    })
}
