//! Stateless HTTP/JSON service over the engine.
//!
//! Routes:
//!
//! - `GET  /api/v1/health`
//! - `GET  /api/v1/patterns/defaults/{beats}`
//! - `POST /api/v1/patterns/validate` with a pattern document body
//! - `POST /api/v1/sample` with a [`SampleRequest`]
//! - `POST /api/v1/speed-profile` with a [`SpeedProfileRequest`]
//!
//! Errors are `{code, message, detail?}` bodies. Every handler is a pure
//! function of its request.

use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::Path;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use crate::document::{default_document, validate, ParseMode, PatternDocument, ValidationReport};
use crate::geometry::Pattern;
use crate::kinematics::{BeatEvent, Motion, MotionSample, SpeedSample};
use crate::timing::{Tempo, TimingLaw};

pub const MAX_SAMPLE_COUNT: usize = 100_000;
pub const DEFAULT_SAMPLES_PER_SEGMENT: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRequest {
    pub pattern: PatternDocument,
    pub bpm: f64,
    pub beta: f64,
    pub t0: f64,
    pub t1: f64,
    pub count: usize,
    #[serde(default)]
    pub start_offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleResponse {
    pub samples: Vec<MotionSample>,
    pub beat_events: Vec<BeatEvent>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedProfileRequest {
    pub pattern: PatternDocument,
    pub bpm: f64,
    pub beta: f64,
    #[serde(default = "default_samples_per_segment")]
    pub samples_per_segment: usize,
}

fn default_samples_per_segment() -> usize {
    DEFAULT_SAMPLES_PER_SEGMENT
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedProfileResponse {
    pub profile: Vec<SpeedSample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status: status.as_u16(),
            code: code.to_string(),
            message: message.into(),
            detail: None,
        }
    }

    fn bad_request(message: impl ToString) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "bad_request", message.to_string())
    }

    fn bad_document(message: impl ToString) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "bad_document", message.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn health() -> Health {
    Health {
        status: "ok".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

pub fn get_default(beats: u32) -> Result<PatternDocument, ApiError> {
    default_document(beats)
        .map_err(|e| ApiError::new(StatusCode::NOT_FOUND, "unsupported_beats", e.to_string()))
}

pub fn validate_document(doc: &PatternDocument) -> Result<ValidationReport, ApiError> {
    let pattern = doc.to_pattern().map_err(ApiError::bad_document)?;
    Ok(validate(&pattern))
}

/// Builds the pattern and refuses it with 422 and the report if it has errors.
fn accepted_pattern(doc: &PatternDocument) -> Result<Pattern, ApiError> {
    let pattern = doc.to_pattern().map_err(ApiError::bad_document)?;
    let report = validate(&pattern);
    if !report.is_accepted() {
        let mut err = ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "validation_failed",
            format!("pattern has {} validation error(s)", report.error_count()),
        );
        err.detail = Some(serde_json::to_value(&report).expect("report is serializable"));
        return Err(err);
    }
    Ok(pattern)
}

fn law_for(pattern: &Pattern, bpm: f64, beta: f64) -> Result<TimingLaw, ApiError> {
    let tempo = Tempo::new(pattern.beats(), bpm).map_err(ApiError::bad_request)?;
    TimingLaw::new(tempo, beta).map_err(ApiError::bad_request)
}

pub fn sample(req: &SampleRequest) -> Result<SampleResponse, ApiError> {
    if !(2..=MAX_SAMPLE_COUNT).contains(&req.count) {
        return Err(ApiError::bad_request(format!(
            "count must be in [2, {MAX_SAMPLE_COUNT}], got {}",
            req.count
        )));
    }
    let pattern = accepted_pattern(&req.pattern)?;
    let law = law_for(&pattern, req.bpm, req.beta)?;
    let motion = Motion::new(&pattern, &law)
        .and_then(|m| m.with_start_offset(req.start_offset))
        .map_err(ApiError::bad_request)?;
    let samples = motion
        .sample_trajectory(req.t0, req.t1, req.count)
        .map_err(ApiError::bad_request)?;
    let beat_events = motion
        .beat_events(req.t0, req.t1)
        .map_err(ApiError::bad_request)?;
    Ok(SampleResponse {
        samples,
        beat_events,
    })
}

pub fn speed_profile(req: &SpeedProfileRequest) -> Result<SpeedProfileResponse, ApiError> {
    let points = req
        .samples_per_segment
        .saturating_mul(2 * req.pattern.beats as usize);
    if req.samples_per_segment < 2 || points > MAX_SAMPLE_COUNT {
        return Err(ApiError::bad_request(format!(
            "samples_per_segment must be at least 2 and give at most {MAX_SAMPLE_COUNT} points, got {}",
            req.samples_per_segment
        )));
    }
    let pattern = accepted_pattern(&req.pattern)?;
    let law = law_for(&pattern, req.bpm, req.beta)?;
    let profile = Motion::new(&pattern, &law)
        .and_then(|m| m.speed_profile(req.samples_per_segment))
        .map_err(ApiError::bad_request)?;
    Ok(SpeedProfileResponse { profile })
}

fn parse_body<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(ApiError::bad_request)
}

async fn health_handler() -> Json<Health> {
    Json(health())
}

async fn default_handler(Path(beats): Path<String>) -> ApiResult<PatternDocument> {
    let beats: u32 = beats.parse().map_err(|_| {
        ApiError::new(
            StatusCode::NOT_FOUND,
            "unsupported_beats",
            format!("`{beats}` is not a beat count"),
        )
    })?;
    get_default(beats).map(Json)
}

async fn validate_handler(body: Bytes) -> ApiResult<ValidationReport> {
    let text = std::str::from_utf8(&body).map_err(ApiError::bad_document)?;
    let doc = PatternDocument::parse(text, ParseMode::Strict).map_err(ApiError::bad_document)?;
    validate_document(&doc).map(Json)
}

async fn sample_handler(body: Bytes) -> ApiResult<SampleResponse> {
    sample(&parse_body(&body)?).map(Json)
}

async fn speed_profile_handler(body: Bytes) -> ApiResult<SpeedProfileResponse> {
    speed_profile(&parse_body(&body)?).map(Json)
}

pub fn router() -> Router {
    Router::new()
        .route("/api/v1/health", get(health_handler))
        .route("/api/v1/patterns/defaults/{beats}", get(default_handler))
        .route("/api/v1/patterns/validate", post(validate_handler))
        .route("/api/v1/sample", post(sample_handler))
        .route("/api/v1/speed-profile", post(speed_profile_handler))
        .layer(CorsLayer::permissive())
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}
