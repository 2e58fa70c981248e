//! Serves mentor interviews over HTTP, one append-only log file per
//! session.

mod api;
mod export;
mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::Router;
use tokio::net::TcpListener;
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

pub use api::ApiError;
pub use export::{ExportFormat, UnknownFormat};
pub use store::{SessionGuard, SessionStore, StoreError};

/// The API plus, when `ui_dir` is given, the companion UI as static files.
pub fn app(store: Arc<SessionStore>, ui_dir: Option<PathBuf>) -> Router {
    let mut router = api::routes(store);
    if let Some(dir) = ui_dir {
        router = router.fallback_service(ServeDir::new(dir));
    }
    router.layer(CorsLayer::permissive())
}

/// Serves `app` on `listener` until ctrl-c.
pub async fn serve(listener: TcpListener, app: Router) -> std::io::Result<()> {
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

/// Binds `port` on all interfaces; port 0 picks a free one.
pub async fn bind(port: u16) -> std::io::Result<(TcpListener, SocketAddr)> {
    let listener = TcpListener::bind(("0.0.0.0", port)).await?;
    let addr = listener.local_addr()?;
    Ok((listener, addr))
}
