//! HTTP annotation API over one corpus file.
//!
//! Each dialogue is held as an in-memory working copy with a revision
//! counter. Mutations name the revision they were made against and are
//! rejected with 409 when it is stale. Every response carries the thread
//! partition and diagnostics of the revision it reports.

pub mod api;
pub mod session;

use std::future::Future;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::sync::Arc;

use axum::Router;
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

pub use api::{router, ApiError, DialogueView, LabelInput};
pub use session::{AtomicFileStorage, DialogueInfo, ServiceError, Session, Snapshot, Storage};

pub const DEFAULT_PORT: u16 = 7878;

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub corpus: PathBuf,
    pub host: IpAddr,
    pub port: u16,
    /// Static UI assets served at `/` when set.
    pub static_dir: Option<PathBuf>,
}

impl ServeConfig {
    pub fn new(corpus: impl Into<PathBuf>) -> Self {
        ServeConfig {
            corpus: corpus.into(),
            host: IpAddr::V4(Ipv4Addr::LOCALHOST),
            port: DEFAULT_PORT,
            static_dir: None,
        }
    }

    pub fn addr(&self) -> SocketAddr {
        SocketAddr::new(self.host, self.port)
    }
}

/// The API router, with the static UI as fallback when configured.
pub fn app(session: Arc<Session>, static_dir: Option<PathBuf>) -> Router {
    let api = router(session);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until `shutdown` resolves.
pub async fn serve(config: ServeConfig, shutdown: impl Future<Output = ()> + Send + 'static) -> Result<(), ServiceError> {
    let session = Arc::new(Session::open(&config.corpus, Arc::new(AtomicFileStorage))?);
    let listener = TcpListener::bind(config.addr()).await?;
    tracing::info!(addr = %listener.local_addr()?, corpus = %config.corpus.display(), "serving annotation API");
    axum::serve(listener, app(session, config.static_dir))
        .with_graceful_shutdown(shutdown)
        .await?;
    Ok(())
}
