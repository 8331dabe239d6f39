//! Stateless HTTP API over the engine.
//!
//! Every POST endpoint takes `{"game": <game file>, "options": {...}}` and
//! answers `{"ok": true, "result": ...}` or
//! `{"ok": false, "error": {"code": ..., "message": ...}}`.

use std::net::SocketAddr;
use std::path::PathBuf;

use axum::body::Bytes;
use axum::extract::DefaultBodyLimit;
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde_json::{json, Value};
use tower_http::cors::{Any, CorsLayer};
use tower_http::services::ServeDir;

use qegs_core::format::parse_game_value;
use qegs_core::{Bimatrix, Error};

pub mod ops;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const BODY_LIMIT: usize = 1 << 20;
/// Games with more rows or columns than this are refused.
pub const MAX_DIMENSION: usize = 100;

#[derive(Clone, Debug, Default)]
pub struct Config {
    /// Directory served under `/ui`.
    pub ui_dir: Option<PathBuf>,
}

impl Config {
    /// Reads `QEGS_UI_DIR`.
    pub fn from_env() -> Self {
        Config {
            ui_dir: std::env::var_os("QEGS_UI_DIR").map(PathBuf::from),
        }
    }
}

pub fn router(config: &Config) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    let mut app = Router::new()
        .route("/api/v1/health", get(health))
        .route("/api/v1/solve", post(|body: Bytes| handle(body, ops::solve_request)))
        .route("/api/v1/extend", post(|body: Bytes| handle(body, ops::extend_request)))
        .route("/api/v1/sweep", post(|body: Bytes| handle(body, ops::sweep_request)))
        .route("/api/v1/ewl", post(|body: Bytes| handle(body, ops::ewl_request)));
    if let Some(dir) = &config.ui_dir {
        app = app.nest_service("/ui", ServeDir::new(dir));
    }
    app.layer(DefaultBodyLimit::max(BODY_LIMIT)).layer(cors)
}

pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(&config)).await
}

async fn health() -> Json<Value> {
    Json(json!({"ok": true, "version": VERSION}))
}

type Op = fn(&Bimatrix, &Value) -> Result<Value, Error>;

async fn handle(body: Bytes, op: Op) -> Response {
    let outcome = tokio::task::spawn_blocking(move || run(&body, op)).await;
    match outcome {
        Ok(Ok(result)) => (StatusCode::OK, Json(json!({"ok": true, "result": result}))).into_response(),
        Ok(Err(e)) => error_response(&e),
        Err(join) => {
            log::error!("request task failed: {join}");
            let body = json!({"ok": false, "error": {"code": "INTERNAL", "message": "internal error"}});
            (StatusCode::INTERNAL_SERVER_ERROR, Json(body)).into_response()
        }
    }
}

fn run(body: &[u8], op: Op) -> Result<Value, Error> {
    let request: Value =
        serde_json::from_slice(body).map_err(|e| Error::Parse(format!("invalid JSON body: {e}")))?;
    let game = request
        .get("game")
        .ok_or_else(|| Error::Parse("request needs a `game`".into()))?;
    let game = parse_game_value(game)?;
    if game.rows() > MAX_DIMENSION || game.cols() > MAX_DIMENSION {
        return Err(Error::Param(format!(
            "games are limited to {MAX_DIMENSION}x{MAX_DIMENSION} (got {}x{})",
            game.rows(),
            game.cols()
        )));
    }
    let options = request.get("options").cloned().unwrap_or(Value::Null);
    op(&game, &options)
}

fn error_response(e: &Error) -> Response {
    let code = e.code();
    let status = if e.is_validation() {
        StatusCode::BAD_REQUEST
    } else {
        log::error!("{e}");
        StatusCode::INTERNAL_SERVER_ERROR
    };
    let body = json!({"ok": false, "error": {"code": code.as_str(), "message": e.to_string()}});
    (status, Json(body)).into_response()
}
