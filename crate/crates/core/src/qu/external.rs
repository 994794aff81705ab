//! Client for an external seq2seq SR generator.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{ConversationHistory, HistoryTurn, StructuredRepresentation};
use crate::error::{Error, Result};
use crate::http::JsonClient;

pub const DEFAULT_QU_TIMEOUT: Duration = Duration::from_secs(10);

#[derive(Serialize)]
struct SrRequest<'a> {
    history_turns: &'a [HistoryTurn],
    question: &'a str,
}

#[derive(Deserialize)]
struct SrResponse {
    sr: String,
}

/// POSTs `{history_turns, question}` and expects `{sr: "c | q | p | t"}`.
/// No retries.
#[derive(Debug, Clone)]
pub struct ExternalSrClient {
    client: JsonClient,
}

impl ExternalSrClient {
    pub fn new(endpoint: impl Into<String>) -> Self {
        Self::with_timeout(endpoint, DEFAULT_QU_TIMEOUT)
    }

    pub fn with_timeout(endpoint: impl Into<String>, timeout: Duration) -> Self {
        ExternalSrClient {
            client: JsonClient::new(endpoint, timeout),
        }
    }

    pub fn endpoint(&self) -> &str {
        self.client.endpoint()
    }

    pub fn generate(&self, history: &ConversationHistory, question: &str) -> Result<StructuredRepresentation> {
        let resp: SrResponse = self.client.post(&SrRequest {
            history_turns: &history.turns,
            question,
        })?;
        StructuredRepresentation::parse(&resp.sr)
            .map_err(|e| Error::Protocol(format!("{}: malformed SR {:?}: {e}", self.endpoint(), resp.sr)))
    }
}
