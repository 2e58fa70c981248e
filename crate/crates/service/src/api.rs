//! HTTP routes. Every response body is JSON except the DOT and Markdown
//! exports.

use std::collections::BTreeSet;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use mentor_core::dialogue::TranscriptEntry;
use mentor_core::hypothesis::render_all;
use mentor_core::{
    CognitiveMap, DialogueSession, DialogueState, EdgeId, EngineConfig, Hypothesis, ParseResult, TurnResult,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::export::{ExportFormat, UnknownFormat};
use crate::store::{SessionStore, StoreError};

#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    fn bad_request(code: &'static str, message: impl Into<String>) -> Self {
        Self { status: StatusCode::BAD_REQUEST, code, message: message.into() }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let (status, code) = match &e {
            StoreError::NotFound(_) => (StatusCode::NOT_FOUND, "not_found"),
            StoreError::Busy(_) => (StatusCode::CONFLICT, "turn_in_progress"),
            StoreError::Finished(_) => (StatusCode::GONE, "session_done"),
            StoreError::EmptyText => (StatusCode::BAD_REQUEST, "empty_text"),
            StoreError::Io(_) | StoreError::Corrupt { .. } => {
                (StatusCode::INTERNAL_SERVER_ERROR, "storage_error")
            }
        };
        Self { status, code, message: e.to_string() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": { "code": self.code, "message": self.message } });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

#[derive(Serialize)]
struct Created {
    session_id: String,
    greeting: String,
    replies: Vec<String>,
    state: &'static str,
    state_detail: DialogueState,
    map: CognitiveMap,
}

#[derive(Serialize)]
struct Turn {
    session_id: String,
    replies: Vec<String>,
    state: &'static str,
    state_detail: DialogueState,
    map: CognitiveMap,
    #[serde(skip_serializing_if = "Option::is_none")]
    hypotheses: Option<Vec<Hypothesis>>,
    done: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    parse: Option<ParseResult>,
}

impl Turn {
    fn new(session_id: String, t: TurnResult) -> Self {
        Self {
            session_id,
            replies: t.replies,
            state: t.state.name(),
            state_detail: t.state,
            map: t.map,
            hypotheses: t.hypotheses,
            done: t.done,
            parse: t.parse,
        }
    }
}

#[derive(Serialize)]
struct Snapshot<'a> {
    session_id: &'a str,
    state: &'static str,
    state_detail: &'a DialogueState,
    done: bool,
    config: &'a EngineConfig,
    transcript: &'a [TranscriptEntry],
    map: &'a CognitiveMap,
    refinement_queue: Vec<&'a EdgeId>,
    asked_refinements: &'a BTreeSet<EdgeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hypotheses: Option<Vec<Hypothesis>>,
}

impl<'a> Snapshot<'a> {
    fn of(s: &'a DialogueSession) -> Self {
        Self {
            session_id: s.id(),
            state: s.state().name(),
            state_detail: s.state(),
            done: s.is_done(),
            config: s.config(),
            transcript: s.transcript(),
            map: s.map(),
            refinement_queue: s.refinement_queue().collect(),
            asked_refinements: s.asked_refinements(),
            hypotheses: s.hypotheses(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Message {
    text: String,
}

#[derive(Deserialize)]
struct ExportQuery {
    format: Option<String>,
}

async fn create(State(store): State<Arc<SessionStore>>) -> ApiResult<impl IntoResponse> {
    let session = store.create()?;
    let replies = session.opening_replies();
    let body = Created {
        session_id: session.id().to_owned(),
        greeting: replies.first().cloned().unwrap_or_default(),
        replies,
        state: session.state().name(),
        state_detail: session.state().clone(),
        map: session.map().clone(),
    };
    Ok((StatusCode::CREATED, Json(body)))
}

async fn message(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<Json<Turn>> {
    let mut guard = store.try_begin(&id)?;
    let message: Message = serde_json::from_slice(&body)
        .map_err(|e| ApiError::bad_request("invalid_body", format!("expected {{\"text\": ...}}: {e}")))?;
    let result = store.turn(&mut guard, &message.text)?;
    Ok(Json(Turn::new(id, result)))
}

async fn session(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<Response> {
    let session = store.get(&id).await?;
    Ok(Json(Snapshot::of(&session)).into_response())
}

async fn map(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> ApiResult<Response> {
    let session = store.get(&id).await?;
    Ok(([(header::CONTENT_TYPE, "application/json")], session.map().to_json()).into_response())
}

async fn hypotheses(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
) -> ApiResult<Json<Vec<Hypothesis>>> {
    let session = store.get(&id).await?;
    Ok(Json(render_all(session.map())))
}

async fn export(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Query(query): Query<ExportQuery>,
) -> ApiResult<Response> {
    let format: ExportFormat = query
        .format
        .as_deref()
        .unwrap_or("")
        .parse()
        .map_err(|e: UnknownFormat| ApiError::bad_request("unknown_format", e.to_string()))?;
    let session = store.get(&id).await?;
    let body = format.render(session.map());
    Ok(([(header::CONTENT_TYPE, format.content_type())], body).into_response())
}

pub fn routes(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/api/sessions", post(create))
        .route("/api/sessions/{id}/messages", post(message))
        .route("/api/sessions/{id}", get(session))
        .route("/api/sessions/{id}/map", get(map))
        .route("/api/sessions/{id}/hypotheses", get(hypotheses))
        .route("/api/sessions/{id}/export", get(export))
        .with_state(store)
}
