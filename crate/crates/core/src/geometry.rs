//! The closed pattern curve: anchors, Hermite segments and evaluation.
//!
//! The curve parameter `s` runs one unit per segment, so a pattern with `N`
//! beats has period `2N`. Integer `s` lands on anchors; `s = 2k - 2` is the
//! preparation of beat `k` and `s = 2k - 1` its ictus.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{ensure_finite, ensure_unit_interval, Error, Result};

/// A point in the pattern plane, `y` pointing up.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// Tangents and velocities share the point representation.
pub type Vector2 = Point2;

impl Point2 {
    pub const ZERO: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Reflection across the vertical axis, `(x, y) -> (-x, y)`.
    pub fn mirror(self) -> Self {
        Point2::new(-self.x, self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    #[serde(rename = "prep")]
    Preparation,
    Ictus,
}

impl Role {
    /// Role of the anchor at a cyclic index: even indices are preparations.
    pub fn at_index(index: usize) -> Role {
        if index.is_multiple_of(2) {
            Role::Preparation
        } else {
            Role::Ictus
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Preparation => "prep",
            Role::Ictus => "ictus",
        })
    }
}

/// Which side of the podium the pattern is drawn for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum View {
    #[default]
    Conductor,
    Performer,
}

impl View {
    pub fn flipped(self) -> View {
        match self {
            View::Conductor => View::Performer,
            View::Performer => View::Conductor,
        }
    }
}

/// A preparation or ictus with its signed roundness.
///
/// The tangent of the curve at the anchor is `(roundness, 0)`: positive values
/// pass the anchor left to right, negative right to left, and zero gives a
/// cusp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnchorPoint {
    pub role: Role,
    pub position: Point2,
    pub roundness: f64,
}

impl AnchorPoint {
    pub fn new(role: Role, position: Point2, roundness: f64) -> Self {
        AnchorPoint {
            role,
            position,
            roundness,
        }
    }

    pub fn tangent(&self) -> Vector2 {
        Point2::new(self.roundness, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PatternError {
    #[error("a pattern needs at least one beat")]
    NoBeats,
    #[error("anchor count {found} ≠ 2N = {expected}")]
    AnchorCount { found: usize, expected: usize },
    #[error("anchor {index} should be {expected} but is {found}; roles must alternate starting with prep")]
    Alternation {
        index: usize,
        expected: Role,
        found: Role,
    },
    #[error("anchor {index} has non-finite {field}")]
    NonFinite { index: usize, field: &'static str },
}

/// A cyclic sequence `P_1, I_1, ..., P_N, I_N` of anchors defining a closed curve.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    beats: u32,
    anchors: Vec<AnchorPoint>,
    view: View,
}

impl Pattern {
    pub fn new(beats: u32, anchors: Vec<AnchorPoint>, view: View) -> Result<Self, PatternError> {
        if beats == 0 {
            return Err(PatternError::NoBeats);
        }
        let expected = 2 * beats as usize;
        if anchors.len() != expected {
            return Err(PatternError::AnchorCount {
                found: anchors.len(),
                expected,
            });
        }
        for (index, anchor) in anchors.iter().enumerate() {
            let role = Role::at_index(index);
            if anchor.role != role {
                return Err(PatternError::Alternation {
                    index,
                    expected: role,
                    found: anchor.role,
                });
            }
            check_anchor_finite(index, anchor)?;
        }
        Ok(Pattern {
            beats,
            anchors,
            view,
        })
    }

    /// Builds a pattern from `(x, y, roundness)` triples, assigning roles
    /// alternately starting with a preparation.
    pub fn from_xyr(triples: &[(f64, f64, f64)], view: View) -> Result<Self, PatternError> {
        let anchors: Vec<_> = triples
            .iter()
            .enumerate()
            .map(|(i, &(x, y, r))| AnchorPoint::new(Role::at_index(i), Point2::new(x, y), r))
            .collect();
        if anchors.len() % 2 != 0 {
            return Err(PatternError::AnchorCount {
                found: anchors.len(),
                expected: anchors.len() + 1,
            });
        }
        Pattern::new((anchors.len() / 2) as u32, anchors, view)
    }

    pub fn beats(&self) -> u32 {
        self.beats
    }

    pub fn anchors(&self) -> &[AnchorPoint] {
        &self.anchors
    }

    pub fn view(&self) -> View {
        self.view
    }

    pub fn segment_count(&self) -> usize {
        self.anchors.len()
    }

    /// Length of one traversal in curve-parameter units, `2N`.
    pub fn period(&self) -> f64 {
        self.anchors.len() as f64
    }

    /// Number of free reals describing the geometry: `x`, `y` and roundness per anchor.
    pub fn parameter_count(&self) -> usize {
        3 * self.anchors.len()
    }

    pub fn set_position(&mut self, index: usize, position: Point2) -> Result<()> {
        let anchor = self.anchor_mut(index)?;
        let mut updated = *anchor;
        updated.position = position;
        check_anchor_finite(index, &updated).map_err(|e| Error::domain(e.to_string()))?;
        *anchor = updated;
        Ok(())
    }

    pub fn set_roundness(&mut self, index: usize, roundness: f64) -> Result<()> {
        ensure_finite("roundness", roundness)?;
        self.anchor_mut(index)?.roundness = roundness;
        Ok(())
    }

    fn anchor_mut(&mut self, index: usize) -> Result<&mut AnchorPoint> {
        let len = self.anchors.len();
        self.anchors
            .get_mut(index)
            .ok_or_else(|| Error::domain(format!("anchor index {index} out of range 0..{len}")))
    }

    pub(crate) fn with_view(mut self, view: View) -> Self {
        self.view = view;
        self
    }

    /// The Hermite segment from anchor `i` to anchor `i + 1` (cyclically).
    pub fn segment(&self, i: usize) -> Result<HermiteSegment> {
        let n = self.anchors.len();
        if i >= n {
            return Err(Error::domain(format!(
                "segment index {i} out of range 0..{n}"
            )));
        }
        Ok(self.segment_unchecked(i))
    }

    fn segment_unchecked(&self, i: usize) -> HermiteSegment {
        let a = &self.anchors[i];
        let b = &self.anchors[(i + 1) % self.anchors.len()];
        HermiteSegment {
            p0: a.position,
            m0: a.tangent(),
            p1: b.position,
            m1: b.tangent(),
        }
    }

    /// Reduces `s` into `[0, 2N)` and splits it into segment index and local parameter.
    fn locate(&self, s: f64) -> Result<(usize, f64)> {
        ensure_finite("curve parameter", s)?;
        let period = self.period();
        let mut reduced = s.rem_euclid(period);
        if reduced >= period {
            // rem_euclid of a tiny negative number can round up to the period
            reduced = 0.0;
        }
        let i = (reduced.floor() as usize).min(self.anchors.len() - 1);
        let u = (reduced - i as f64).clamp(0.0, 1.0);
        Ok((i, u))
    }

    /// The periodic curve `g(s)`.
    pub fn curve_point(&self, s: f64) -> Result<Point2> {
        let (i, u) = self.locate(s)?;
        Ok(self.segment_unchecked(i).eval_unchecked(u))
    }

    /// `dg/ds`. At integer `s` this is the anchor's `(roundness, 0)`.
    pub fn curve_tangent(&self, s: f64) -> Result<Vector2> {
        let (i, u) = self.locate(s)?;
        Ok(self.segment_unchecked(i).tangent_unchecked(u))
    }
}

fn check_anchor_finite(index: usize, anchor: &AnchorPoint) -> Result<(), PatternError> {
    let field = if !anchor.position.x.is_finite() {
        "x"
    } else if !anchor.position.y.is_finite() {
        "y"
    } else if !anchor.roundness.is_finite() {
        "roundness"
    } else {
        return Ok(());
    };
    Err(PatternError::NonFinite { index, field })
}

/// A cubic Hermite curve on `u ∈ [0, 1]` with end points `p0`, `p1` and
/// end tangents `m0`, `m1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteSegment {
    pub p0: Point2,
    pub m0: Vector2,
    pub p1: Point2,
    pub m1: Vector2,
}

impl HermiteSegment {
    pub fn eval(&self, u: f64) -> Result<Point2> {
        ensure_unit_interval("segment parameter u", u)?;
        Ok(self.eval_unchecked(u))
    }

    pub fn tangent(&self, u: f64) -> Result<Vector2> {
        ensure_unit_interval("segment parameter u", u)?;
        Ok(self.tangent_unchecked(u))
    }

    // Each basis polynomial is exactly 0 or 1 at the ends, so H(0) = p0 and
    // H(1) = p1 bit for bit.
    pub(crate) fn eval_unchecked(&self, u: f64) -> Point2 {
        let u2 = u * u;
        let u3 = u2 * u;
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        self.p0 * h00 + self.m0 * h10 + self.p1 * h01 + self.m1 * h11
    }

    pub(crate) fn tangent_unchecked(&self, u: f64) -> Vector2 {
        let u2 = u * u;
        let d00 = 6.0 * u2 - 6.0 * u;
        let d10 = 3.0 * u2 - 4.0 * u + 1.0;
        let d01 = -6.0 * u2 + 6.0 * u;
        let d11 = 3.0 * u2 - 2.0 * u;
        self.p0 * d00 + self.m0 * d10 + self.p1 * d01 + self.m1 * d11
    }
}
