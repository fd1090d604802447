//! HTTP/JSON service: live sessions against the engine plus the analysis
//! operations of `mbrg_core::api`.
//!
//! Search runs on the blocking pool; each session is mutated under its own
//! lock, so concurrent sessions do not wait on each other.

mod store;

use std::future::Future;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use mbrg_core::api::{self, ApiError, ErrorKind, MoveRequest};
use mbrg_core::session::{Hint, Session, SessionConfig, SessionView};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};
use tower_http::services::ServeDir;

pub use store::{SharedSession, Store, StoreError};

/// Error response: the status from the error kind, `{code, message}` body.
#[derive(Debug)]
pub struct Failure(pub ApiError);

impl From<ApiError> for Failure {
    fn from(e: ApiError) -> Self {
        Failure(e)
    }
}

impl IntoResponse for Failure {
    fn into_response(self) -> Response {
        let status = match self.0.kind {
            ErrorKind::BadRequest => StatusCode::BAD_REQUEST,
            ErrorKind::NotFound => StatusCode::NOT_FOUND,
            ErrorKind::Conflict => StatusCode::CONFLICT,
            ErrorKind::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(self.0)).into_response()
    }
}

type Reply<T> = Result<Json<T>, Failure>;

fn internal(message: impl Into<String>) -> ApiError {
    ApiError::new(ErrorKind::Internal, "internal", message)
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload
        .map(|Json(t)| t)
        .map_err(|e| ApiError::bad_request("bad-request", e.body_text()))
}

/// Runs CPU-bound work off the async workers.
async fn blocking<T, F>(f: F) -> Reply<T>
where
    T: Send + 'static,
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => r.map(Json).map_err(Failure),
        Err(e) => Err(Failure(internal(format!("worker failed: {e}")))),
    }
}

#[derive(Clone)]
pub struct AppState {
    pub store: Arc<Store>,
}

impl AppState {
    pub fn new(store: Store) -> Self {
        AppState {
            store: Arc::new(store),
        }
    }

    fn session(&self, id: &str) -> Result<SharedSession, ApiError> {
        self.store
            .get(id)
            .ok_or_else(|| ApiError::not_found(format!("unknown session `{id}`")))
    }
}

fn persisted(store: &Store, session: &Session) -> Result<(), ApiError> {
    store.persist(session).map_err(|e| internal(e.to_string()))
}

async fn create_session(
    State(app): State<AppState>,
    payload: Result<Json<SessionConfig>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionView>), Failure> {
    let config = body(payload)?;
    let Json(view) = blocking(move || {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session::new(id, config)?;
        let view = session.view();
        app.store
            .insert(session)
            .map_err(|e| internal(e.to_string()))?;
        tracing::info!(id = %view.id, graph = %view.graph, "session created");
        Ok(view)
    })
    .await?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_session(State(app): State<AppState>, Path(id): Path<String>) -> Reply<SessionView> {
    let session = app.session(&id)?;
    let view = session.lock().view();
    Ok(Json(view))
}

async fn play(
    State(app): State<AppState>,
    Path(id): Path<String>,
    payload: Result<Json<MoveRequest>, JsonRejection>,
) -> Reply<SessionView> {
    let MoveRequest { vertex } = body(payload)?;
    let shared = app.session(&id)?;
    blocking(move || {
        let mut session = shared.lock();
        session.play(vertex)?;
        persisted(&app.store, &session)?;
        Ok(session.view())
    })
    .await
}

async fn undo(State(app): State<AppState>, Path(id): Path<String>) -> Reply<SessionView> {
    let shared = app.session(&id)?;
    blocking(move || {
        let mut session = shared.lock();
        session.undo()?;
        persisted(&app.store, &session)?;
        Ok(session.view())
    })
    .await
}

#[derive(Debug, Default, Deserialize, Serialize)]
pub struct HintQuery {
    /// `optimal` or a strategy name.
    pub strategy: Option<String>,
}

async fn hint(
    State(app): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<HintQuery>,
) -> Reply<Hint> {
    let shared = app.session(&id)?;
    blocking(move || Ok(shared.lock().hint(q.strategy.as_deref())?)).await
}

#[derive(Debug, Default, Deserialize, Serialize)]
pub struct StrategiesQuery {
    pub graph: Option<String>,
}

async fn strategies(Query(q): Query<StrategiesQuery>) -> Reply<Vec<api::StrategyInfo>> {
    blocking(move || api::strategies(q.graph.as_deref())).await
}

async fn theorems() -> Json<Vec<api::TheoremInfo>> {
    Json(api::theorems())
}

async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

/// A POST route running one analysis operation on the request body.
fn analysis<Req, Res, F>(op: F) -> axum::routing::MethodRouter<AppState>
where
    Req: DeserializeOwned + Send + 'static,
    Res: Serialize + Send + 'static,
    F: Fn(&Req) -> Result<Res, ApiError> + Copy + Send + Sync + 'static,
{
    post(
        move |payload: Result<Json<Req>, JsonRejection>| async move {
            let req = body(payload)?;
            blocking(move || op(&req)).await
        },
    )
}

async fn not_found() -> Failure {
    Failure(ApiError::not_found("no such route"))
}

pub struct ServerOptions {
    pub bind: SocketAddr,
    /// Serves the browser UI's built assets at `/` when set.
    pub static_dir: Option<PathBuf>,
    /// Mirrors sessions to JSON documents when set.
    pub data_dir: Option<PathBuf>,
    /// Allowed CORS origin; any origin when absent.
    pub cors_origin: Option<String>,
}

pub fn cors(origin: Option<&str>) -> Result<CorsLayer, String> {
    let layer = CorsLayer::new().allow_methods(Any).allow_headers(Any);
    Ok(match origin {
        None | Some("*") => layer.allow_origin(Any),
        Some(o) => layer.allow_origin(AllowOrigin::exact(
            HeaderValue::from_str(o).map_err(|e| format!("invalid CORS origin `{o}`: {e}"))?,
        )),
    })
}

pub fn router(state: AppState, static_dir: Option<PathBuf>, cors: CorsLayer) -> Router {
    let app = Router::new()
        .route("/health", get(health))
        .route("/theorems", get(theorems))
        .route("/strategies", get(strategies))
        .route("/graph", analysis(api::graph_info))
        .route("/dim", analysis(api::dim))
        .route("/outcome", analysis(api::outcome))
        .route("/solve", analysis(api::solve))
        .route("/numbers", analysis(api::numbers))
        .route("/pairing", analysis(api::pairing))
        .route("/validate", analysis(api::validate))
        .route("/verify", analysis(api::verify))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", post(play))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/hint", get(hint));
    let app = match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app.fallback(not_found),
    };
    app.layer(cors).with_state(state)
}

/// Serves `app` on `listener` until `shutdown` resolves.
pub async fn run(
    listener: TcpListener,
    app: Router,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await
}

#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("{0}")]
    Cors(String),
    #[error("cannot listen on {addr}: {source}")]
    Bind {
        addr: SocketAddr,
        source: std::io::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Binds, serves, and stops on Ctrl-C.
pub async fn serve(options: ServerOptions) -> Result<(), ServeError> {
    let store = match &options.data_dir {
        Some(dir) => Store::open(dir)?,
        None => Store::in_memory(),
    };
    let restored = store.len();
    let cors = cors(options.cors_origin.as_deref()).map_err(ServeError::Cors)?;
    let app = router(AppState::new(store), options.static_dir, cors);
    let listener = TcpListener::bind(options.bind)
        .await
        .map_err(|source| ServeError::Bind {
            addr: options.bind,
            source,
        })?;
    tracing::info!(addr = %listener.local_addr()?, restored, "listening");
    run(listener, app, async {
        let _ = tokio::signal::ctrl_c().await;
    })
    .await?;
    Ok(())
}
