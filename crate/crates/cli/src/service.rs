//! REST service over conversation sessions.
//!
//! ```text
//! POST   /sessions               -> {session_id}
//! POST   /sessions/{id}/ask      {question, sr_override?}  ?top=N
//! GET    /sessions/{id}          ?top=N
//! DELETE /sessions/{id}
//! ```

use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, CorsLayer};

use hetconv_core::pipeline::Pipeline;
use hetconv_core::qu::{FlowEdge, FlowNode, Slot, StructuredRepresentation};
use hetconv_core::retrieval::{Provenance, RankedEvidence};
use hetconv_core::session::{Session, SessionStore, SrOverride, TurnArtifacts};
use hetconv_core::source::Source;
use hetconv_core::Error;

/// Evidences returned per turn unless `?top=` says otherwise.
pub const DEFAULT_TOP: usize = 20;

pub struct AppState {
    pub pipeline: Pipeline<'static>,
    pub sessions: SessionStore,
}

pub fn router(state: Arc<AppState>, cors_origins: &[String]) -> Router {
    let origin = if cors_origins.is_empty() {
        AllowOrigin::any()
    } else {
        AllowOrigin::list(cors_origins.iter().filter_map(|o| HeaderValue::from_str(o).ok()))
    };
    let cors = CorsLayer::new()
        .allow_origin(origin)
        .allow_methods([Method::GET, Method::POST, Method::DELETE])
        .allow_headers([axum::http::header::CONTENT_TYPE]);
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session).delete(delete_session))
        .route("/sessions/{id}/ask", post(ask))
        .layer(cors)
        .with_state(state)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<String>,
}

pub struct ApiError(Error);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        ApiError(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match &self.0 {
            Error::NotFound(_) => StatusCode::NOT_FOUND,
            Error::Sr(_) | Error::InvalidInput(_) => StatusCode::BAD_REQUEST,
            Error::Transport(_) | Error::Protocol(_) => StatusCode::BAD_GATEWAY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let slot = match &self.0 {
            Error::Sr(e) => e.slot().map(|s| s.name().to_string()),
            _ => None,
        };
        if status.is_server_error() {
            log::error!("{}", self.0);
        }
        let body = ErrorBody {
            error: self.0.to_string(),
            slot,
        };
        (status, Json(body)).into_response()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SessionCreated {
    pub session_id: String,
}

#[derive(Debug, Deserialize)]
pub struct AskRequest {
    #[serde(default)]
    pub question: String,
    #[serde(default)]
    pub sr_override: Option<SrOverride>,
}

#[derive(Debug, Deserialize)]
pub struct TopParam {
    pub top: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SrSlots {
    pub context: String,
    pub question_entity: String,
    pub predicate: String,
    #[serde(rename = "type")]
    pub answer_type: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SrPayload {
    pub text: String,
    pub slots: SrSlots,
}

impl From<&StructuredRepresentation> for SrPayload {
    fn from(sr: &StructuredRepresentation) -> Self {
        SrPayload {
            text: sr.serialize(),
            slots: SrSlots {
                context: sr.slot_text(Slot::Context),
                question_entity: sr.slot_text(Slot::QuestionEntity),
                predicate: sr.slot_text(Slot::Predicate),
                answer_type: sr.slot_text(Slot::AnswerType),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CfgPayload {
    pub nodes: Vec<FlowNode>,
    pub edges: Vec<FlowEdge>,
    pub self_sufficient: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvidencePayload {
    pub evidence_id: String,
    pub source: Source,
    pub text: String,
    pub score: f64,
    pub rank: usize,
    pub provenance: Provenance,
}

impl From<&RankedEvidence> for EvidencePayload {
    fn from(r: &RankedEvidence) -> Self {
        EvidencePayload {
            evidence_id: r.evidence.evidence_id.clone(),
            source: r.evidence.source,
            text: r.evidence.text.clone(),
            score: r.bm25,
            rank: r.rank,
            provenance: r.evidence.provenance.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TurnPayload {
    pub turn: usize,
    pub question: String,
    pub answer: String,
    pub supporting_evidence_ids: Vec<String>,
    pub sr: Option<SrPayload>,
    pub sr_overridden: bool,
    pub cfg: Option<CfgPayload>,
    /// Evidences available for the turn; `evidences` holds the first `top`.
    pub evidence_count: usize,
    pub evidences: Vec<EvidencePayload>,
}

impl TurnPayload {
    pub fn new(t: &TurnArtifacts, top: usize) -> Self {
        TurnPayload {
            turn: t.turn,
            question: t.question.clone(),
            answer: t.answer.raw.clone(),
            supporting_evidence_ids: t.answer.supporting_evidence_ids.clone(),
            sr: t.sr.as_ref().map(SrPayload::from),
            sr_overridden: t.sr_overridden,
            cfg: t.cfg.as_ref().map(|g| CfgPayload {
                nodes: g.nodes.clone(),
                edges: g.edges.clone(),
                self_sufficient: g.self_sufficient,
            }),
            evidence_count: t.evidences.len(),
            evidences: t.evidences.iter().take(top).map(EvidencePayload::from).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionPayload {
    pub session_id: String,
    pub turns: Vec<TurnPayload>,
}

impl SessionPayload {
    pub fn new(s: &Session, top: usize) -> Self {
        SessionPayload {
            session_id: s.session_id.clone(),
            turns: s.turns.iter().map(|t| TurnPayload::new(t, top)).collect(),
        }
    }
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> hetconv_core::Result<T> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError(Error::InvalidInput(format!("request task failed: {e}"))))?
        .map_err(ApiError)
}

async fn create_session(State(state): State<Arc<AppState>>) -> Result<(StatusCode, Json<SessionCreated>), ApiError> {
    let session_id = blocking(move || state.sessions.create()).await?;
    Ok((StatusCode::CREATED, Json(SessionCreated { session_id })))
}

async fn ask(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(top): Query<TopParam>,
    Json(req): Json<AskRequest>,
) -> Result<Json<TurnPayload>, ApiError> {
    let top = top.top.unwrap_or(DEFAULT_TOP);
    let turn = blocking(move || {
        state
            .sessions
            .ask(&id, &state.pipeline, &req.question, req.sr_override.as_ref())
    })
    .await?;
    Ok(Json(TurnPayload::new(&turn, top)))
}

async fn get_session(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(top): Query<TopParam>,
) -> Result<Json<SessionPayload>, ApiError> {
    let session = state.sessions.get(&id)?;
    Ok(Json(SessionPayload::new(&session, top.top.unwrap_or(DEFAULT_TOP))))
}

async fn delete_session(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    blocking(move || state.sessions.delete(&id)).await?;
    Ok(StatusCode::NO_CONTENT)
}
