//! Run the playback service and query it once from a client.
//!
//! cargo run -p conducting --example playback_service -- [port]
//!
//! Pass `--serve` after the port to keep the service running.

use std::net::SocketAddr;

use axum::body::Body;
use axum::http::Request;
use tower::ServiceExt;

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let port: u16 = args.next().map(|p| p.parse()).transpose()?.unwrap_or(8080);
    let keep_running = args.next().as_deref() == Some("--serve");

    // In-process request against the same router the server uses.
    let body = serde_json::json!({
        "pattern": conducting::document::default_document(4)?,
        "bpm": 120.0,
        "beta": 0.6,
        "t0": 0.0,
        "t1": 2.0,
        "count": 5,
    });
    let req = Request::post("/api/v1/sample")
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))?;
    let resp = conducting::service::router().oneshot(req).await?;
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX).await?;
    let reply: conducting::service::SampleResponse = serde_json::from_slice(&bytes)?;
    for s in &reply.samples {
        println!("t = {:.2}  tip = {}", s.t, s.position);
    }
    println!("{} beat events in [0, 2)", reply.beat_events.len());

    if keep_running {
        let addr = SocketAddr::from(([127, 0, 0, 1], port));
        println!("serving on http://{addr}/api/v1/health");
        conducting::service::serve(addr).await?;
    }
    Ok(())
}
