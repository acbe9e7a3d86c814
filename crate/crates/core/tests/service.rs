mod common;

use axum::http::Method;
use common::call;
use conducting::document::{default_document, default_pattern, validate, ValidationReport};
use conducting::kinematics::beat_events;
use conducting::service::{SampleResponse, SpeedProfileResponse};
use conducting::{parse_pattern, serialize_pattern, Motion, PatternDocument, Tempo, TimingLaw};
use serde_json::json;

fn default_json(beats: u32) -> serde_json::Value {
    serde_json::to_value(default_document(beats).unwrap()).unwrap()
}

#[tokio::test]
async fn health_is_static() {
    let a = call(Method::GET, "/api/v1/health", "").await;
    let b = call(Method::GET, "/api/v1/health", "").await;
    assert_eq!(a.status, 200);
    assert_eq!(a.body["status"], "ok");
    assert!(a.body["version"].is_string());
    assert_eq!(a.raw, b.raw);
}

#[tokio::test]
async fn defaults_route() {
    let r = call(Method::GET, "/api/v1/patterns/defaults/3", "").await;
    assert_eq!(r.status, 200);
    assert_eq!(r.body["anchors"].as_array().unwrap().len(), 6);
    assert_eq!(parse_pattern(&r.raw).unwrap(), default_pattern(3).unwrap());

    for bad in ["5", "abc"] {
        let r = call(Method::GET, &format!("/api/v1/patterns/defaults/{bad}"), "").await;
        assert_eq!(r.status, 404);
        assert_eq!(r.body["code"], "unsupported_beats");
    }
}

#[tokio::test]
async fn validate_route() {
    let body = serialize_pattern(&default_pattern(4).unwrap());
    let r = call(Method::POST, "/api/v1/patterns/validate", &body).await;
    assert_eq!(r.status, 200);
    let report: ValidationReport = serde_json::from_value(r.body).unwrap();
    assert_eq!(report, validate(&default_pattern(4).unwrap()));
    assert!(report.is_accepted());

    let inverted = body.replacen("\"y\": 1.0", "\"y\": -2.0", 1);
    let r = call(Method::POST, "/api/v1/patterns/validate", &inverted).await;
    assert_eq!(r.status, 200);
    let report: ValidationReport = serde_json::from_value(r.body).unwrap();
    assert!(report.has_code("extremum_order"));

    let r = call(
        Method::POST,
        "/api/v1/patterns/validate",
        &body[..body.len() / 2],
    )
    .await;
    assert_eq!(r.status, 400);
    assert_eq!(r.body["code"], "bad_document");
}

#[tokio::test]
async fn sample_route_matches_library() {
    let req = json!({
        "pattern": default_json(4),
        "bpm": 120.0,
        "beta": 0.6,
        "t0": 0.0,
        "t1": 2.0,
        "count": 2,
    });
    let r = call(Method::POST, "/api/v1/sample", &req.to_string()).await;
    assert_eq!(r.status, 200, "{}", r.raw);
    let resp: SampleResponse = serde_json::from_str(&r.raw).unwrap();
    assert!(resp.samples[0].position.distance(resp.samples[1].position) <= 1e-9);
    assert_eq!(resp.beat_events.len(), 8);

    let pattern = default_pattern(4).unwrap();
    let law = TimingLaw::new(Tempo::new(4, 120.0).unwrap(), 0.6).unwrap();
    let motion = Motion::new(&pattern, &law).unwrap();
    assert_eq!(resp.samples, motion.sample_trajectory(0.0, 2.0, 2).unwrap());
    assert_eq!(resp.beat_events, beat_events(&law, 0.0, 2.0).unwrap());

    let req = json!({
        "pattern": default_json(4), "bpm": 97.0, "beta": 0.35,
        "t0": 0.3, "t1": 7.9, "count": 513,
    });
    let r = call(Method::POST, "/api/v1/sample", &req.to_string()).await;
    let resp: SampleResponse = serde_json::from_str(&r.raw).unwrap();
    let law = TimingLaw::new(Tempo::new(4, 97.0).unwrap(), 0.35).unwrap();
    let motion = Motion::new(&pattern, &law).unwrap();
    assert_eq!(
        resp.samples,
        motion.sample_trajectory(0.3, 7.9, 513).unwrap()
    );
}

#[tokio::test]
async fn sample_route_errors() {
    let base = json!({
        "pattern": default_json(2), "bpm": 60.0, "beta": 0.5,
        "t0": 0.0, "t1": 1.0, "count": 10,
    });
    let with = |key: &str, value: serde_json::Value| {
        let mut v = base.clone();
        v[key] = value;
        v.to_string()
    };
    for (body, status, code) in [
        (with("count", json!(1)), 400, "bad_request"),
        (with("count", json!(100_001)), 400, "bad_request"),
        (with("beta", json!(1.5)), 400, "bad_request"),
        (with("t1", json!(0.0)), 400, "bad_request"),
        ("{\"pattern\":".to_string(), 400, "bad_request"),
    ] {
        let r = call(Method::POST, "/api/v1/sample", &body).await;
        assert_eq!(
            (r.status, r.body["code"].as_str().unwrap()),
            (status, code),
            "{body}"
        );
    }

    let mut doc = default_document(2).unwrap();
    doc.anchors[0].y = -5.0;
    let r = call(
        Method::POST,
        "/api/v1/sample",
        &with("pattern", serde_json::to_value(&doc).unwrap()),
    )
    .await;
    assert_eq!(r.status, 422);
    assert_eq!(r.body["code"], "validation_failed");
    let report: ValidationReport = serde_json::from_value(r.body["detail"].clone()).unwrap();
    assert!(report.has_code("extremum_order"));
}

#[tokio::test]
async fn start_offset_moves_the_downbeat_to_zero() {
    let req = json!({
        "pattern": default_json(4), "bpm": 120.0, "beta": 0.6,
        "t0": 0.0, "t1": 0.5, "count": 3, "start_offset": 0.25,
    });
    let r = call(Method::POST, "/api/v1/sample", &req.to_string()).await;
    let resp: SampleResponse = serde_json::from_str(&r.raw).unwrap();
    assert!(resp.beat_events[0].is_downbeat());
    assert_eq!(resp.beat_events[0].time, 0.0);
}

#[tokio::test]
async fn speed_profile_route() {
    let req = |beta: f64| {
        json!({ "pattern": default_json(4), "bpm": 120.0, "beta": beta, "samples_per_segment": 16 })
            .to_string()
    };
    let r = call(Method::POST, "/api/v1/speed-profile", &req(0.0)).await;
    assert_eq!(r.status, 200);
    let flat: SpeedProfileResponse = serde_json::from_str(&r.raw).unwrap();
    assert_eq!(flat.profile.len(), 8 * 16 + 1);
    assert!(flat
        .profile
        .iter()
        .all(|p| (p.phase_rate - 4.0).abs() < 1e-12));
    assert!(flat.profile.windows(2).all(|w| w[0].t < w[1].t));

    let r = call(Method::POST, "/api/v1/speed-profile", &req(1.0)).await;
    let full: SpeedProfileResponse = serde_json::from_str(&r.raw).unwrap();
    let min = full
        .profile
        .iter()
        .map(|p| p.phase_rate)
        .fold(f64::INFINITY, f64::min);
    assert!(min.abs() <= 1e-12);

    let pattern = default_pattern(4).unwrap();
    let law = TimingLaw::new(Tempo::new(4, 120.0).unwrap(), 1.0).unwrap();
    assert_eq!(
        full.profile,
        Motion::new(&pattern, &law)
            .unwrap()
            .speed_profile(16)
            .unwrap()
    );

    let bad =
        json!({ "pattern": default_json(4), "bpm": 120.0, "beta": 0.5, "samples_per_segment": 1 });
    let r = call(Method::POST, "/api/v1/speed-profile", &bad.to_string()).await;
    assert_eq!(r.status, 400);
}

#[tokio::test]
async fn responses_do_not_depend_on_request_order() {
    let sample = json!({
        "pattern": default_json(3), "bpm": 88.0, "beta": 0.5,
        "t0": 0.0, "t1": 3.0, "count": 50,
    })
    .to_string();
    let first = call(Method::POST, "/api/v1/sample", &sample).await.raw;
    let _ = call(Method::GET, "/api/v1/patterns/defaults/6", "").await;
    let _ = call(Method::POST, "/api/v1/patterns/validate", "{").await;
    let second = call(Method::POST, "/api/v1/sample", &sample).await.raw;
    assert_eq!(first, second);
}

#[tokio::test]
async fn cross_origin_requests_are_allowed() {
    use axum::body::Body;
    use axum::http::Request;
    use tower::ServiceExt;
    let req = Request::builder()
        .uri("/api/v1/health")
        .header("origin", "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let resp = conducting::service::router().oneshot(req).await.unwrap();
    assert_eq!(
        resp.headers().get("access-control-allow-origin").unwrap(),
        "*"
    );
}

#[test]
fn documents_survive_the_wire() {
    let doc = default_document(6).unwrap();
    let text = serde_json::to_string(&doc).unwrap();
    let back: PatternDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(back, doc);
}
