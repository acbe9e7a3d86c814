//! Pattern documents: the JSON interchange format, built-in defaults,
//! validation against the extremum rules, and the conductor/performer
//! reflection.
//!
//! A document looks like
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "beats": 2,
//!   "view": "conductor",
//!   "anchors": [
//!     { "role": "prep", "beat": 1, "x": 0.0, "y": 1.0, "roundness": 0.0 },
//!     { "role": "ictus", "beat": 1, "x": 0.0, "y": -1.0, "roundness": 0.5 },
//!     ...
//!   ],
//!   "name": "optional",
//!   "description": "optional"
//! }
//! ```
//!
//! Anchors are listed in cyclic order. A document may start anywhere in the
//! cycle; parsing rotates it so that `P_1` comes first.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::geometry::{AnchorPoint, Pattern, PatternError, Point2, Role, View};

pub const FORMAT_VERSION: u32 = 1;

/// Default strictness for the extremum checks, in plane units.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Beat counts with a built-in pattern.
pub const DEFAULT_BEATS: [u32; 4] = [2, 3, 4, 6];

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed pattern document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    UnsupportedVersion(u32),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("anchors {index} and {next} are both {role}; roles must alternate prep, ictus")]
    Alternation {
        index: usize,
        next: usize,
        role: Role,
    },
    #[error("no anchor is the preparation of beat 1")]
    MissingFirstPreparation,
    #[error("anchor {index} is labelled beat {found} but its place in the cycle makes it beat {expected}")]
    BeatLabel {
        index: usize,
        expected: u32,
        found: u32,
    },
    #[error(transparent)]
    Structure(#[from] PatternError),
}

/// How to treat fields the schema does not know.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    /// Unknown fields are kept in `extra` and written back out on serialization.
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorRecord {
    pub role: Role,
    pub beat: u32,
    pub x: f64,
    pub y: f64,
    pub roundness: f64,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternDocument {
    pub format_version: u32,
    pub beats: u32,
    pub view: View,
    pub anchors: Vec<AnchorRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

impl PatternDocument {
    pub fn parse(text: &str, mode: ParseMode) -> Result<Self, DocumentError> {
        let doc: PatternDocument = serde_json::from_str(text)?;
        if mode == ParseMode::Strict {
            let unknown = doc
                .extra
                .keys()
                .chain(doc.anchors.iter().flat_map(|a| a.extra.keys()))
                .next();
            if let Some(key) = unknown {
                return Err(DocumentError::UnknownField(key.clone()));
            }
        }
        Ok(doc)
    }

    pub fn from_pattern(pattern: &Pattern) -> Self {
        let anchors = pattern
            .anchors()
            .iter()
            .enumerate()
            .map(|(i, a)| AnchorRecord {
                role: a.role,
                beat: (i / 2 + 1) as u32,
                x: a.position.x,
                y: a.position.y,
                roundness: a.roundness,
                extra: BTreeMap::new(),
            })
            .collect();
        PatternDocument {
            format_version: FORMAT_VERSION,
            beats: pattern.beats(),
            view: pattern.view(),
            anchors,
            name: None,
            description: None,
            extra: BTreeMap::new(),
        }
    }

    /// Checks version and structure and builds the engine's pattern.
    pub fn to_pattern(&self) -> Result<Pattern, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::UnsupportedVersion(self.format_version));
        }
        if self.beats == 0 {
            return Err(PatternError::NoBeats.into());
        }
        let n = self.anchors.len();
        let expected = 2 * self.beats as usize;
        if n != expected {
            return Err(PatternError::AnchorCount { found: n, expected }.into());
        }
        for index in 0..n {
            let next = (index + 1) % n;
            if self.anchors[index].role == self.anchors[next].role {
                return Err(DocumentError::Alternation {
                    index,
                    next,
                    role: self.anchors[index].role,
                });
            }
        }
        let start = self
            .anchors
            .iter()
            .position(|a| a.role == Role::Preparation && a.beat == 1)
            .ok_or(DocumentError::MissingFirstPreparation)?;
        let anchors = (0..n)
            .map(|k| {
                let index = (start + k) % n;
                let record = &self.anchors[index];
                let expected = (k / 2 + 1) as u32;
                if record.beat != expected {
                    return Err(DocumentError::BeatLabel {
                        index,
                        expected,
                        found: record.beat,
                    });
                }
                Ok(AnchorPoint::new(
                    record.role,
                    Point2::new(record.x, record.y),
                    record.roundness,
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Pattern::new(self.beats, anchors, self.view)?)
    }

    /// Pretty-printed JSON with a trailing newline. Field order is fixed and
    /// numbers use the shortest representation that parses back exactly.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document is always serializable");
        text.push('\n');
        text
    }
}

/// Strict parse of a document into a pattern.
pub fn parse_pattern(text: &str) -> Result<Pattern> {
    Ok(PatternDocument::parse(text, ParseMode::Strict)?.to_pattern()?)
}

/// Canonical document text for a pattern, starting at `P_1`.
pub fn serialize_pattern(pattern: &Pattern) -> String {
    PatternDocument::from_pattern(pattern).to_json()
}

/// Mirror image for the other side of the podium: `(x, y, r) -> (-x, y, -r)`.
pub fn reflect_pattern(pattern: &Pattern) -> Pattern {
    let anchors = pattern
        .anchors()
        .iter()
        .map(|a| {
            // 0.0 - v keeps zeros positive so documents never show -0.0
            AnchorPoint::new(
                a.role,
                Point2::new(0.0 - a.position.x, a.position.y),
                0.0 - a.roundness,
            )
        })
        .collect();
    Pattern::new(pattern.beats(), anchors, pattern.view())
        .expect("reflection preserves structure")
        .with_view(pattern.view().flipped())
}

fn default_source(beats: u32) -> Option<&'static str> {
    match beats {
        2 => Some(include_str!("../data/defaults/beats2.json")),
        3 => Some(include_str!("../data/defaults/beats3.json")),
        4 => Some(include_str!("../data/defaults/beats4.json")),
        6 => Some(include_str!("../data/defaults/beats6.json")),
        _ => None,
    }
}

/// The built-in document for 2, 3, 4 or 6 beats, including its name and description.
pub fn default_document(beats: u32) -> Result<PatternDocument> {
    let source = default_source(beats).ok_or_else(|| {
        Error::domain(format!(
            "no built-in pattern for {beats} beats (supported: 2, 3, 4, 6)"
        ))
    })?;
    Ok(PatternDocument::parse(source, ParseMode::Strict)?)
}

/// The built-in pattern for 2, 3, 4 or 6 beats.
///
/// The first preparation is a cusp; give it a roundness with
/// [`Pattern::set_roundness`] at index 0 for a rounded top.
pub fn default_pattern(beats: u32) -> Result<Pattern> {
    Ok(default_document(beats)?.to_pattern()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub severity: Severity,
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor_index: Option<usize>,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let severity = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{severity}[{}]", self.code)?;
        if let Some(i) = self.anchor_index {
            write!(f, " anchor {i}")?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
    }

    pub fn error_count(&self) -> usize {
        self.errors().count()
    }

    /// True when the engine accepts the pattern.
    pub fn is_accepted(&self) -> bool {
        self.error_count() == 0
    }

    pub fn has_code(&self, code: &str) -> bool {
        self.findings.iter().any(|f| f.code == code)
    }

    fn push(
        &mut self,
        severity: Severity,
        code: &str,
        anchor_index: Option<usize>,
        message: String,
    ) {
        self.findings.push(Finding {
            severity,
            code: code.to_string(),
            message,
            anchor_index,
        });
    }
}

fn anchor_label(index: usize) -> String {
    let beat = index / 2 + 1;
    match Role::at_index(index) {
        Role::Preparation => format!("P{beat}"),
        Role::Ictus => format!("I{beat}"),
    }
}

// Half-width of the curve-parameter window sampled around each anchor.
const NEIGHBORHOOD: f64 = 0.05;
const NEIGHBORHOOD_SAMPLES: usize = 8;

/// Checks that preparations are local maxima and icti local minima of the
/// curve's height, and flags cusps and coincident neighbours.
pub fn validate_pattern(pattern: &Pattern, tolerance: f64) -> Result<ValidationReport> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let anchors = pattern.anchors();
    let n = anchors.len();
    let mut report = ValidationReport::default();

    // With one beat both neighbours of P_1 are I_1; check the pair once.
    let pairs = if n == 2 { 1 } else { n };
    for i in 0..pairs {
        let j = (i + 1) % n;
        let (prep, ictus) = if i % 2 == 0 { (i, j) } else { (j, i) };
        let (yp, yi) = (anchors[prep].position.y, anchors[ictus].position.y);
        if yp - yi <= tolerance {
            report.push(
                Severity::Error,
                "extremum_order",
                Some(prep),
                format!(
                    "preparation {} (y = {yp}) must be above the adjacent ictus {} (y = {yi})",
                    anchor_label(prep),
                    anchor_label(ictus)
                ),
            );
        }
    }

    for (k, anchor) in anchors.iter().enumerate() {
        let y0 = anchor.position.y;
        // Sign convention: positive means the curve moved the wrong way.
        let sign = match anchor.role {
            Role::Preparation => 1.0,
            Role::Ictus => -1.0,
        };
        let mut wrong = false;
        let mut separated = [false; 2];
        for (side, dir) in [-1.0, 1.0].into_iter().enumerate() {
            for step in 1..=NEIGHBORHOOD_SAMPLES {
                let s = k as f64 + dir * NEIGHBORHOOD * step as f64 / NEIGHBORHOOD_SAMPLES as f64;
                let dy = sign * (pattern.curve_point(s)?.y - y0);
                if dy > tolerance {
                    wrong = true;
                } else if dy < -tolerance {
                    separated[side] = true;
                }
            }
        }
        let label = anchor_label(k);
        if wrong {
            let what = match anchor.role {
                Role::Preparation => "rises above",
                Role::Ictus => "dips below",
            };
            report.push(
                Severity::Error,
                "neighborhood_extremum",
                Some(k),
                format!("the curve {what} {label} within ±{NEIGHBORHOOD} of it"),
            );
        } else if !(separated[0] && separated[1]) {
            report.push(
                Severity::Warning,
                "neighborhood_inconclusive",
                Some(k),
                format!("the curve stays level with {label} within ±{NEIGHBORHOOD} of it"),
            );
        }
        if anchor.roundness == 0.0 {
            report.push(
                Severity::Warning,
                "cusp",
                Some(k),
                format!("{label} has zero roundness and forms a cusp"),
            );
        }
        let next = (k + 1) % n;
        if n > 2 || k == 0 {
            let gap = anchor.position.distance(anchors[next].position);
            if gap <= tolerance {
                report.push(
                    Severity::Error,
                    "coincident_anchors",
                    Some(k),
                    format!("{label} and {} coincide", anchor_label(next)),
                );
            }
        }
    }
    Ok(report)
}

/// [`validate_pattern`] at [`DEFAULT_TOLERANCE`].
pub fn validate(pattern: &Pattern) -> ValidationReport {
    validate_pattern(pattern, DEFAULT_TOLERANCE).expect("default tolerance is positive")
}
