#![allow(dead_code)]

use std::path::PathBuf;

use axum::body::Body;
use axum::http::{Method, Request};
use conducting::{HermiteSegment, Pattern, Point2, View};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tower::ServiceExt;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_pattern(rng: &mut StdRng) -> Pattern {
    let beats = rng.random_range(1..=8usize);
    let triples: Vec<(f64, f64, f64)> = (0..2 * beats)
        .map(|_| {
            (
                rng.random_range(-10.0..10.0),
                rng.random_range(-10.0..10.0),
                rng.random_range(-4.0..4.0),
            )
        })
        .collect();
    Pattern::from_xyr(&triples, View::Conductor).unwrap()
}

pub fn random_point(rng: &mut StdRng, scale: f64) -> Point2 {
    Point2::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}

/// Evaluates a Hermite segment through its monomial coefficients
/// `p0 + m0 u + (3(p1 - p0) - 2 m0 - m1) u² + (2(p0 - p1) + m0 + m1) u³`.
pub fn monomial_eval(seg: &HermiteSegment, u: f64) -> Point2 {
    let coord = |p0: f64, m0: f64, p1: f64, m1: f64| {
        let c2 = 3.0 * (p1 - p0) - 2.0 * m0 - m1;
        let c3 = 2.0 * (p0 - p1) + m0 + m1;
        ((c3 * u + c2) * u + m0) * u + p0
    };
    Point2::new(
        coord(seg.p0.x, seg.m0.x, seg.p1.x, seg.m1.x),
        coord(seg.p0.y, seg.m0.y, seg.p1.y, seg.m1.y),
    )
}

/// Oracle for the periodic curve: own modular reduction and segment lookup.
pub fn monomial_curve_point(pattern: &Pattern, s: f64) -> Point2 {
    let n = pattern.anchors().len();
    let reduced = s - (s / n as f64).floor() * n as f64;
    let i = (reduced.floor() as usize).min(n - 1);
    let a = pattern.anchors()[i];
    let b = pattern.anchors()[(i + 1) % n];
    let seg = HermiteSegment {
        p0: a.position,
        m0: Point2::new(a.roundness, 0.0),
        p1: b.position,
        m1: Point2::new(b.roundness, 0.0),
    };
    monomial_eval(&seg, reduced - i as f64)
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Runs the CLI in-process and returns (exit code, stdout, stderr).
pub fn run_cli(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut input = stdin.as_bytes();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["conduct"];
    full.extend_from_slice(args);
    let code = conducting::cli::run(full, &mut input, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

pub struct GoldenCase {
    pub file: &'static str,
    pub args: &'static [&'static str],
}

/// Every golden case reads the built-in 4-beat document on stdin.
pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        file: "defaults_4.json",
        args: &["defaults", "--beats", "4"],
    },
    GoldenCase {
        file: "render_4.svg",
        args: &["render", "-"],
    },
    GoldenCase {
        file: "speed_4.svg",
        args: &["speed", "-", "--bpm", "120", "--beta", "0.7"],
    },
    GoldenCase {
        file: "sample_4.csv",
        args: &[
            "sample", "-", "--bpm", "120", "--beta", "0.6", "--from", "0", "--to", "2", "--count",
            "17",
        ],
    },
];

/// Compares each case with its golden file. With `UPDATE_GOLDENS=1` the
/// files are rewritten instead.
pub fn check_goldens() -> Result<usize, String> {
    let (_, input, _) = run_cli(&["defaults", "--beats", "4"], "");
    let update = std::env::var_os("UPDATE_GOLDENS").is_some();
    for case in GOLDEN_CASES {
        let (code, out, err) = run_cli(case.args, &input);
        if code != 0 {
            return Err(format!("{}: exit {code}: {err}", case.file));
        }
        let path = golden_dir().join(case.file);
        if update {
            std::fs::write(&path, &out).map_err(|e| e.to_string())?;
            continue;
        }
        let want =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        if want != out {
            return Err(format!("{} differs from golden output", case.file));
        }
    }
    Ok(GOLDEN_CASES.len())
}

pub struct Reply {
    pub status: u16,
    pub body: serde_json::Value,
    pub raw: String,
}

pub async fn call(method: Method, path: &str, body: &str) -> Reply {
    let req = Request::builder()
        .method(method)
        .uri(path)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let resp = conducting::service::router().oneshot(req).await.unwrap();
    let status = resp.status().as_u16();
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX)
        .await
        .unwrap();
    let raw = String::from_utf8(bytes.to_vec()).unwrap();
    let body = serde_json::from_str(&raw).unwrap_or(serde_json::Value::Null);
    Reply { status, body, raw }
}
