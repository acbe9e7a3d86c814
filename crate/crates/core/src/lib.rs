//! Conducting beat patterns as a two-stage model.
//!
//! A pattern is a closed curve through `2N` anchors (a preparation and an
//! ictus for each of the `N` beats), built from cubic Hermite segments whose
//! tangents at the anchors are horizontal. A [`TimingLaw`] maps wall-clock
//! time to the curve parameter with a quintic ease per half-beat, so the
//! baton position is `curve_point(pattern, phase(law, t))`.
//!
//! ```
//! use conducting::{default_pattern, Motion, Tempo, TimingLaw};
//!
//! let pattern = default_pattern(4).unwrap();
//! let law = TimingLaw::new(Tempo::new(4, 120.0).unwrap(), 0.6).unwrap();
//! let motion = Motion::new(&pattern, &law).unwrap();
//!
//! // One segment into the cycle the baton sits on the downbeat ictus.
//! let tip = motion.position(law.tempo().segment_duration()).unwrap();
//! assert!((tip.y - pattern.anchors()[1].position.y).abs() < 1e-9);
//! ```

pub mod cli;
pub mod document;
mod error;
pub mod geometry;
pub mod kinematics;
pub mod render;
pub mod service;
pub mod timing;

pub use document::{
    default_pattern, parse_pattern, reflect_pattern, serialize_pattern, validate_pattern,
    PatternDocument, ValidationReport,
};
pub use error::{Error, Result};
pub use geometry::{AnchorPoint, HermiteSegment, Pattern, Point2, Role, Vector2, View};
pub use kinematics::{BeatEvent, Motion, MotionSample, SpeedSample, Trail};
pub use timing::{EaseCoefficients, Tempo, TimingLaw};
