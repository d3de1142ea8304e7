//! REST endpoints. Errors are `{"error_code", "message"}` with the status
//! from [`SessionError::status`].

use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{FromRequest, Path, Request, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{any, get, post};
use axum::{Json, Router};
use fishery_core::Decision;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{SessionError, SessionResult};
use crate::presets::PresetCatalog;
use crate::session::{CastOutcome, SellRequest, SessionState};
use crate::store::{CreateRequest, SessionStore};

pub struct ApiError(SessionError);

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        Self(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.0.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        if status.is_server_error() {
            tracing::error!(error = %self.0, "request failed");
        }
        let body = json!({ "error_code": self.0.code(), "message": self.0.to_string() });
        (status, Json(body)).into_response()
    }
}

/// `Json` whose rejections come back as `INVALID_REQUEST`.
pub struct Body<T>(pub T);

impl<S, T> FromRequest<S> for Body<T>
where
    T: DeserializeOwned,
    S: Send + Sync,
{
    type Rejection = ApiError;

    async fn from_request(req: Request, state: &S) -> Result<Self, Self::Rejection> {
        match Json::<T>::from_request(req, state).await {
            Ok(Json(v)) => Ok(Body(v)),
            Err(rejection) => Err(SessionError::InvalidRequest(rejection_message(rejection)).into()),
        }
    }
}

fn rejection_message(r: JsonRejection) -> String {
    r.body_text()
}

type ApiResult<T> = Result<Json<T>, ApiError>;
type Store = Arc<SessionStore>;

// Store calls may touch the disk and wait on a session lock, so they run off
// the async workers.
async fn blocking<T, F>(store: Store, f: F) -> Result<T, ApiError>
where
    F: FnOnce(&SessionStore) -> SessionResult<T> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(move || f(&store))
        .await
        .map_err(|e| SessionError::Storage(format!("worker failed: {e}")))?
        .map_err(ApiError)
}

#[derive(Debug, Serialize)]
struct Created {
    session_id: String,
    state: crate::view::StateView,
}

async fn create(State(store): State<Store>, Body(req): Body<CreateRequest>) -> Result<Response, ApiError> {
    let (session_id, state) = blocking(store, move |s| s.create(&req)).await?;
    Ok((StatusCode::CREATED, Json(Created { session_id, state })).into_response())
}

async fn get_state(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<serde_json::Value> {
    let state = blocking(store, move |s| s.read(&id, |g| Ok(g.view()))).await?;
    Ok(Json(json!({ "state": state })))
}

async fn cast(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<serde_json::Value> {
    let outcome = blocking(store, move |s| s.update(&id, SessionState::cast)).await?;
    Ok(Json(match outcome {
        CastOutcome::Catch(c) => json!({ "catch": c }),
        CastOutcome::NoBite => json!({ "no_bite": true }),
    }))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecisionBody {
    action: Decision,
}

async fn decide(
    State(store): State<Store>,
    Path(id): Path<String>,
    Body(body): Body<DecisionBody>,
) -> ApiResult<serde_json::Value> {
    let state = blocking(store, move |s| s.update(&id, |g| g.decide(body.action))).await?;
    Ok(Json(json!({ "state": state })))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SellBody {
    fish_ids: SellRequest,
}

async fn sell(
    State(store): State<Store>,
    Path(id): Path<String>,
    Body(body): Body<SellBody>,
) -> ApiResult<serde_json::Value> {
    let state = blocking(store, move |s| s.update(&id, |g| g.sell(&body.fish_ids))).await?;
    Ok(Json(json!({ "state": state })))
}

async fn end_day(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<crate::view::EndDayView> {
    Ok(Json(blocking(store, move |s| s.update(&id, SessionState::end_day)).await?))
}

async fn mail(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<crate::view::MailView> {
    Ok(Json(blocking(store, move |s| s.update(&id, |g| Ok(g.read_mail()))).await?))
}

async fn stats(State(store): State<Store>, Path(id): Path<String>) -> ApiResult<crate::view::StatsView> {
    Ok(Json(blocking(store, move |s| s.read(&id, SessionState::stats)).await?))
}

async fn presets(State(store): State<Store>) -> Json<serde_json::Value> {
    let names: Vec<&str> = store.presets().names().collect();
    Json(json!({ "presets": names }))
}

async fn no_route() -> ApiError {
    SessionError::NotFound("endpoint".into()).into()
}

pub fn router(store: Store) -> Router {
    Router::new()
        .route("/api/presets", get(presets))
        .route("/api/sessions", post(create))
        .route("/api/sessions/{id}", get(get_state))
        .route("/api/sessions/{id}/cast", post(cast))
        .route("/api/sessions/{id}/decision", post(decide))
        .route("/api/sessions/{id}/sell", post(sell))
        .route("/api/sessions/{id}/end-day", post(end_day))
        .route("/api/sessions/{id}/mail", get(mail))
        .route("/api/sessions/{id}/stats", get(stats))
        .route("/api/{*rest}", any(no_route))
        .with_state(store)
}

#[derive(Debug, Clone)]
pub struct ServeOptions {
    pub host: IpAddr,
    pub port: u16,
    pub data_dir: Option<PathBuf>,
    pub presets: Option<PathBuf>,
    /// Directory with the browser client, served for non-API paths.
    pub static_dir: Option<PathBuf>,
}

impl Default for ServeOptions {
    fn default() -> Self {
        Self {
            host: IpAddr::V4(Ipv4Addr::LOCALHOST),
            port: 8080,
            data_dir: None,
            presets: None,
            static_dir: None,
        }
    }
}

impl ServeOptions {
    pub fn build_store(&self) -> SessionResult<SessionStore> {
        let presets = match &self.presets {
            Some(path) => PresetCatalog::load(path)?,
            None => PresetCatalog::builtin(),
        };
        match &self.data_dir {
            Some(dir) => SessionStore::persistent(presets, dir),
            None => Ok(SessionStore::in_memory(presets)),
        }
    }
}

/// Serve until Ctrl-C.
pub async fn serve(options: ServeOptions) -> std::io::Result<()> {
    let store = options
        .build_store()
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e.to_string()))?;
    let mut app = router(Arc::new(store));
    if let Some(dir) = &options.static_dir {
        app = app.fallback_service(tower_http::services::ServeDir::new(dir));
    }
    let addr = SocketAddr::new(options.host, options.port);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "session service listening");
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
