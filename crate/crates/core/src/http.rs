//! Minimal blocking JSON-over-POST client shared by the external QU and
//! reader services.

use std::time::Duration;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct JsonClient {
    endpoint: String,
    agent: ureq::Agent,
}

impl JsonClient {
    pub(crate) fn new(endpoint: impl Into<String>, timeout: Duration) -> Self {
        let config = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .http_status_as_error(false)
            .build();
        JsonClient {
            endpoint: endpoint.into(),
            agent: config.into(),
        }
    }

    pub(crate) fn endpoint(&self) -> &str {
        &self.endpoint
    }

    /// Non-200 responses and network failures are transport errors; an
    /// undecodable 200 body is a protocol error.
    pub(crate) fn post<B: Serialize, R: DeserializeOwned>(&self, body: &B) -> Result<R> {
        let mut resp = self
            .agent
            .post(&self.endpoint)
            .send_json(body)
            .map_err(|e| Error::Transport(format!("{}: {e}", self.endpoint)))?;
        let status = resp.status().as_u16();
        if status != 200 {
            return Err(Error::Transport(format!("{}: HTTP {status}", self.endpoint)));
        }
        resp.body_mut()
            .read_json::<R>()
            .map_err(|e| Error::Protocol(format!("{}: bad response body: {e}", self.endpoint)))
    }
}
