//! Routes and JSON payloads.
//!
//! | method | path                          | body                                               |
//! |--------|-------------------------------|----------------------------------------------------|
//! | GET    | `/api/taxonomy`               |                                                    |
//! | GET    | `/api/dialogues`              |                                                    |
//! | GET    | `/api/dialogues/{id}`         |                                                    |
//! | POST   | `/api/dialogues/{id}/edges`   | `{source, target, labels?, expected_revision}`     |
//! | DELETE | `/api/dialogues/{id}/edges`   | `{source, target, label?, expected_revision}`      |
//! | POST   | `/api/dialogues/{id}/save`    |                                                    |
//! | GET    | `/api/dialogues/{id}/stats`   |                                                    |
//!
//! Labels are corpus label records (`{"kind":..,"tag":..,"orientation":..}`)
//! or bare tag names resolved with the tag parser. Errors come back as
//! `{"error": code, "message": text}`; a 409 also carries `revision`.

use std::sync::{Arc, OnceLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use dda_core::analytics::DialogueReport;
use dda_core::io::corpus::{EdgeRecord, LabelRecord, SchemaCause, UnitRecord};
use dda_core::{parse_tag, Diagnostic, EdgeLabel, TaxonomyDump, TaxonomyError, Thread, UnitId};
use serde::{Deserialize, Serialize};
use tower_http::cors::{Any, CorsLayer};

use crate::session::{ServiceError, Session, Snapshot};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum LabelInput {
    Name(String),
    Record(LabelRecord),
}

impl LabelInput {
    fn resolve(&self) -> Result<EdgeLabel, ApiError> {
        match self {
            LabelInput::Name(name) => parse_tag(name).map_err(ApiError::from),
            LabelInput::Record(record) => record.to_label().map_err(|cause| match cause {
                SchemaCause::Taxonomy(e) => ApiError::from(e),
                other => ApiError::unprocessable("InvalidLabel", other.to_string()),
            }),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AddEdgeRequest {
    pub source: UnitId,
    pub target: UnitId,
    #[serde(default)]
    pub labels: Vec<LabelInput>,
    pub expected_revision: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemoveEdgeRequest {
    pub source: UnitId,
    pub target: UnitId,
    #[serde(default)]
    pub label: Option<LabelInput>,
    pub expected_revision: u64,
}

/// Full dialogue state at one revision.
#[derive(Debug, Clone, Serialize)]
pub struct DialogueView {
    pub diagnostics: Vec<Diagnostic>,
    pub edges: Vec<EdgeRecord>,
    pub id: String,
    pub revision: u64,
    pub threads: Vec<Thread>,
    pub units: Vec<UnitRecord>,
}

impl From<Snapshot> for DialogueView {
    fn from(s: Snapshot) -> Self {
        DialogueView {
            diagnostics: s.diagnostics(),
            edges: s.dialogue.edges().map(|e| EdgeRecord::from_edge(&e)).collect(),
            id: s.dialogue.id().to_string(),
            revision: s.revision,
            units: s.dialogue.units().iter().map(UnitRecord::from_unit).collect(),
            threads: s.threads,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct ListingEntry {
    edge_count: usize,
    id: String,
    revision: u64,
    unit_count: usize,
}

#[derive(Debug, Clone, Serialize)]
struct Listing {
    dialogues: Vec<ListingEntry>,
}

#[derive(Debug, Clone, Serialize)]
struct Saved {
    id: String,
    path: String,
    revision: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: String,
    pub message: String,
    pub revision: Option<u64>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
    message: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    revision: Option<u64>,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.to_string(),
            message: message.into(),
            revision: None,
        }
    }

    fn unprocessable(code: &str, message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, code, message)
    }
}

impl From<TaxonomyError> for ApiError {
    fn from(e: TaxonomyError) -> Self {
        let code = match e {
            TaxonomyError::UnknownTag(_) => "UnknownTag",
            TaxonomyError::AmbiguousTag(_) => "AmbiguousTag",
            _ => "InvalidLabel",
        };
        ApiError::unprocessable(code, e.to_string())
    }
}

impl From<ServiceError> for ApiError {
    fn from(e: ServiceError) -> Self {
        let message = e.to_string();
        match e {
            ServiceError::NoSuchDialogue(_) => ApiError::new(StatusCode::NOT_FOUND, "NoSuchDialogue", message),
            ServiceError::RevisionConflict { current, .. } => ApiError {
                revision: Some(current),
                ..ApiError::new(StatusCode::CONFLICT, "RevisionConflict", message)
            },
            ServiceError::Graph(g) => ApiError::unprocessable(g.code().name(), message),
            ServiceError::Unsavable { .. } => ApiError::unprocessable("Unsavable", message),
            ServiceError::Load { .. } | ServiceError::Format { .. } | ServiceError::Storage(_) | ServiceError::Io(_) => {
                ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "StorageFailure", message)
            }
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "MalformedRequest", e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            error: &self.code,
            message: &self.message,
            revision: self.revision,
        };
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

fn taxonomy_body() -> &'static str {
    static BODY: OnceLock<String> = OnceLock::new();
    BODY.get_or_init(|| TaxonomyDump::new().to_json())
}

async fn taxonomy() -> impl IntoResponse {
    ([(header::CONTENT_TYPE, "application/json")], taxonomy_body())
}

async fn list(State(session): State<Arc<Session>>) -> Json<Listing> {
    let dialogues = session
        .list()
        .into_iter()
        .map(|d| ListingEntry {
            edge_count: d.edge_count,
            id: d.id,
            revision: d.revision,
            unit_count: d.unit_count,
        })
        .collect();
    Json(Listing { dialogues })
}

async fn dialogue(State(session): State<Arc<Session>>, Path(id): Path<String>) -> ApiResult<DialogueView> {
    Ok(Json(session.snapshot(&id)?.into()))
}

async fn add_edge(
    State(session): State<Arc<Session>>,
    Path(id): Path<String>,
    body: Result<Json<AddEdgeRequest>, JsonRejection>,
) -> ApiResult<DialogueView> {
    let Json(req) = body?;
    let labels = req.labels.iter().map(LabelInput::resolve).collect::<Result<Vec<_>, _>>()?;
    let snapshot = session.add_edge(&id, req.source, req.target, labels, req.expected_revision)?;
    Ok(Json(snapshot.into()))
}

async fn remove_edge(
    State(session): State<Arc<Session>>,
    Path(id): Path<String>,
    body: Result<Json<RemoveEdgeRequest>, JsonRejection>,
) -> ApiResult<DialogueView> {
    let Json(req) = body?;
    let label = req.label.as_ref().map(LabelInput::resolve).transpose()?;
    let snapshot = session.remove_edge(&id, req.source, req.target, label.as_ref(), req.expected_revision)?;
    Ok(Json(snapshot.into()))
}

async fn save(State(session): State<Arc<Session>>, Path(id): Path<String>) -> ApiResult<Saved> {
    let revision = session.save(&id)?;
    Ok(Json(Saved {
        id,
        path: session.path().display().to_string(),
        revision,
    }))
}

async fn stats(State(session): State<Arc<Session>>, Path(id): Path<String>) -> ApiResult<DialogueReport> {
    Ok(Json(DialogueReport::new(&session.snapshot(&id)?.dialogue)))
}

/// The API routes with permissive CORS for a browser UI on another origin.
pub fn router(session: Arc<Session>) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods(Any)
        .allow_headers(Any);
    Router::new()
        .route("/api/taxonomy", get(taxonomy))
        .route("/api/dialogues", get(list))
        .route("/api/dialogues/{id}", get(dialogue))
        .route("/api/dialogues/{id}/edges", post(add_edge).delete(remove_edge))
        .route("/api/dialogues/{id}/save", post(save))
        .route("/api/dialogues/{id}/stats", get(stats))
        .layer(cors)
        .with_state(session)
}
