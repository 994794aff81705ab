//! Interactive sessions: a conversation whose history holds the system's
//! own answers, with per-turn artifacts kept for replay.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::answering::PredictedAnswer;
use crate::error::{Error, Result};
use crate::pipeline::Pipeline;
use crate::qu::{ConversationHistory, ConversationalFlowGraph, Slot, SrError, StructuredRepresentation};
use crate::retrieval::RankedEvidence;

/// A user-edited SR, either as `ctx | qent | pred | type` or as the four
/// slot texts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SrOverride {
    Text(String),
    Slots([String; 4]),
}

impl SrOverride {
    pub fn to_sr(&self) -> std::result::Result<StructuredRepresentation, SrError> {
        match self {
            SrOverride::Text(t) => StructuredRepresentation::parse(t),
            SrOverride::Slots(slots) => {
                for (text, slot) in slots.iter().zip(Slot::CANONICAL_ORDER) {
                    if text.contains('|') {
                        return Err(SrError::Separator(slot));
                    }
                }
                StructuredRepresentation::parse(&slots.join(" | "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnArtifacts {
    pub turn: usize,
    pub question: String,
    pub sr: Option<StructuredRepresentation>,
    pub sr_overridden: bool,
    pub cfg: Option<ConversationalFlowGraph>,
    pub evidences: Vec<RankedEvidence>,
    pub answer: PredictedAnswer,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Session {
    pub session_id: String,
    pub history: ConversationHistory,
    pub turns: Vec<TurnArtifacts>,
}

impl Session {
    pub fn new(session_id: impl Into<String>) -> Self {
        Session {
            session_id: session_id.into(),
            history: ConversationHistory::new(),
            turns: Vec::new(),
        }
    }

    /// Answers `question` and records the turn. With an override, a
    /// question equal to the last one re-answers that turn in place;
    /// otherwise the override is used for a new turn.
    pub fn ask(&mut self, pipeline: &Pipeline<'_>, question: &str, sr_override: Option<&SrOverride>) -> Result<&TurnArtifacts> {
        let question = question.trim();
        if question.is_empty() && sr_override.is_none() {
            return Err(Error::InvalidInput("empty question".into()));
        }
        let Some(over) = sr_override else {
            let out = pipeline.answer_turn(&self.history, question, None)?;
            return Ok(self.record(out, false));
        };
        let sr = over.to_sr()?;
        let replace = self
            .turns
            .last()
            .is_some_and(|t| question.is_empty() || t.question == question);
        if replace {
            self.history.turns.pop();
            let last = self.turns.pop().expect("non-empty");
            let out = pipeline.answer_from_sr(&self.history, &last.question, sr)?;
            return Ok(self.record(out, true));
        }
        let out = pipeline.answer_from_sr(&self.history, question, sr)?;
        Ok(self.record(out, true))
    }

    fn record(&mut self, out: crate::pipeline::TurnOutput, overridden: bool) -> &TurnArtifacts {
        self.history.push(out.question.clone(), vec![out.answer.raw.clone()]);
        self.turns.push(TurnArtifacts {
            turn: self.turns.len(),
            question: out.question,
            sr: out.sr,
            sr_overridden: overridden,
            cfg: out.cfg,
            evidences: out.ranked,
            answer: out.answer,
        });
        self.turns.last().expect("just pushed")
    }
}

fn new_session_id() -> String {
    let bytes: [u8; 16] = rand::thread_rng().gen();
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// In-memory sessions, optionally mirrored to one JSON file per session.
/// Each session has its own lock, so asks on different sessions proceed
/// in parallel.
#[derive(Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    dir: Option<PathBuf>,
}

impl SessionStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads every `*.json` session in `dir` (created if missing).
    pub fn persistent(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let mut sessions = HashMap::new();
        let entries = std::fs::read_dir(&dir).map_err(|e| Error::io(&dir, e))?;
        for entry in entries {
            let path = entry.map_err(|e| Error::io(&dir, e))?.path();
            if path.extension().is_none_or(|x| x != "json") {
                continue;
            }
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let s: Session = serde_json::from_str(&text).map_err(|e| Error::json(&path, &e))?;
            sessions.insert(s.session_id.clone(), Arc::new(Mutex::new(s)));
        }
        Ok(SessionStore {
            sessions: RwLock::new(sessions),
            dir: Some(dir),
        })
    }

    fn path(&self, id: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{id}.json")))
    }

    fn save(&self, session: &Session) -> Result<()> {
        if let Some(path) = self.path(&session.session_id) {
            let json = serde_json::to_vec(session).expect("session serializes");
            write_atomic(&path, &json)?;
        }
        Ok(())
    }

    pub fn create(&self) -> Result<String> {
        let session = Session::new(new_session_id());
        let id = session.session_id.clone();
        self.save(&session)?;
        self.sessions
            .write()
            .expect("session map lock")
            .insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok(id)
    }

    fn handle(&self, id: &str) -> Result<Arc<Mutex<Session>>> {
        self.sessions
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| Error::NotFound(format!("session {id}")))
    }

    /// A copy of the stored session, as recorded.
    pub fn get(&self, id: &str) -> Result<Session> {
        Ok(self.handle(id)?.lock().expect("session lock").clone())
    }

    pub fn ask(&self, id: &str, pipeline: &Pipeline<'_>, question: &str, sr_override: Option<&SrOverride>) -> Result<TurnArtifacts> {
        let handle = self.handle(id)?;
        let mut session = handle.lock().expect("session lock");
        let turn = session.ask(pipeline, question, sr_override)?.clone();
        self.save(&session)?;
        Ok(turn)
    }

    pub fn delete(&self, id: &str) -> Result<()> {
        self.sessions
            .write()
            .expect("session map lock")
            .remove(id)
            .ok_or_else(|| Error::NotFound(format!("session {id}")))?;
        if let Some(path) = self.path(id) {
            match std::fs::remove_file(&path) {
                Err(e) if e.kind() != std::io::ErrorKind::NotFound => return Err(Error::io(path, e)),
                _ => {}
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session map lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}
