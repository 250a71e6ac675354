//! HTTP facade over logs, cubes, cells, models and diffs.
//!
//! Logs and cubes live in an in-memory store under server-generated
//! handles (`log-N`, `cube-N`) that are never reused. Cubes are immutable:
//! slice and dice mint new handles.

mod error;
mod handlers;
mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::extract::DefaultBodyLimit;
use axum::routing::{get, post};
use axum::Router;
use tower_http::services::ServeDir;

pub use error::ApiError;
pub use store::Store;

/// Service settings.
#[derive(Debug, Clone)]
pub struct Config {
    /// Largest accepted request body in bytes.
    pub max_upload: usize,
    /// Limit for cube builds, slices, dice and discovery.
    pub timeout: Duration,
    /// Worker threads per cube build.
    pub threads: usize,
    /// Directory of a UI bundle served for non-API paths.
    pub static_dir: Option<PathBuf>,
    /// Directory where uploaded logs are written as canonical JSON-OCEL.
    pub snapshot_dir: Option<PathBuf>,
}

pub const DEFAULT_MAX_UPLOAD: usize = 256 * 1024 * 1024;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(300);

impl Default for Config {
    fn default() -> Self {
        Self {
            max_upload: DEFAULT_MAX_UPLOAD,
            timeout: DEFAULT_TIMEOUT,
            threads: crate::parallel::default_threads(),
            static_dir: None,
            snapshot_dir: None,
        }
    }
}

/// Shared request state.
#[derive(Debug, Clone)]
pub struct AppState {
    pub store: Arc<Store>,
    pub config: Arc<Config>,
}

impl AppState {
    pub fn new(config: Config) -> Self {
        Self {
            store: Arc::new(Store::default()),
            config: Arc::new(config),
        }
    }
}

/// All API routes, plus the static bundle when configured.
pub fn router(state: AppState) -> Router {
    let max = state.config.max_upload;
    let static_dir = state.config.static_dir.clone();
    let api = Router::new()
        .route("/logs", post(handlers::upload_log))
        .route("/logs/{log}", get(handlers::get_log))
        .route("/logs/{log}/dimensions", get(handlers::log_dimensions))
        .route("/logs/{log}/cubes", post(handlers::build_cube))
        .route("/cubes/{cube}", get(handlers::get_cube))
        .route("/cubes/{cube}/grid", get(handlers::grid))
        .route("/cubes/{cube}/slice", post(handlers::slice))
        .route("/cubes/{cube}/dice", post(handlers::dice))
        .route("/cubes/{cube}/cells/{coord}/count", get(handlers::cell_count))
        .route("/cubes/{cube}/cells/{coord}/log", get(handlers::cell_log))
        .route("/cubes/{cube}/cells/{coord}/ocdfg", get(handlers::cell_ocdfg))
        .route("/cubes/{cube}/cells/{coord}/ocpn", get(handlers::cell_ocpn))
        .route("/compare", post(handlers::compare))
        .layer(DefaultBodyLimit::max(max))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until Ctrl-C.
pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(address = %listener.local_addr()?, "listening");
    axum::serve(listener, router(AppState::new(config)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
