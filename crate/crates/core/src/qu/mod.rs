//! Question understanding: turn a conversational question plus its history
//! into an intent-explicit [`StructuredRepresentation`] (or, for the prepend
//! baselines, an expanded keyword query), and derive the conversational
//! flow graph that explains which earlier turns the SR draws on.

mod cfg;
mod external;
mod heuristic;
mod prepend;
mod sr;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use cfg::{build_cfg, ConversationalFlowGraph, FlowEdge, FlowNode, NodeKind};
pub use external::{ExternalSrClient, DEFAULT_QU_TIMEOUT};
pub use heuristic::{heuristic_sr, infer_answer_type};
pub use prepend::{prepend, PrependMode};
pub use sr::{Slot, SrError, StructuredRepresentation};

use crate::corpus::Corpus;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryTurn {
    pub question: String,
    pub answers: Vec<String>,
}

/// Prior turns in chronological order. Answers are gold or predicted
/// labels depending on the session mode.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConversationHistory {
    pub turns: Vec<HistoryTurn>,
}

impl ConversationHistory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, question: impl Into<String>, answers: Vec<String>) {
        self.turns.push(HistoryTurn {
            question: question.into(),
            answers,
        });
    }

    pub fn len(&self) -> usize {
        self.turns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.turns.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuStrategy {
    PrependInit,
    PrependPrev,
    PrependInitPrev,
    PrependAll,
    HeuristicSr,
    ExternalSr,
    /// SRs from distant-supervision labels (oracle upper bound).
    GoldSr,
}

impl QuStrategy {
    pub fn prepend_mode(self) -> Option<PrependMode> {
        match self {
            QuStrategy::PrependInit => Some(PrependMode::Init),
            QuStrategy::PrependPrev => Some(PrependMode::Prev),
            QuStrategy::PrependInitPrev => Some(PrependMode::InitPrev),
            QuStrategy::PrependAll => Some(PrependMode::All),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QuStrategy::PrependInit => "prepend_init",
            QuStrategy::PrependPrev => "prepend_prev",
            QuStrategy::PrependInitPrev => "prepend_init_prev",
            QuStrategy::PrependAll => "prepend_all",
            QuStrategy::HeuristicSr => "heuristic_sr",
            QuStrategy::ExternalSr => "external_sr",
            QuStrategy::GoldSr => "gold_sr",
        }
    }
}

impl fmt::Display for QuStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QuStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let all = [
            QuStrategy::PrependInit,
            QuStrategy::PrependPrev,
            QuStrategy::PrependInitPrev,
            QuStrategy::PrependAll,
            QuStrategy::HeuristicSr,
            QuStrategy::ExternalSr,
            QuStrategy::GoldSr,
        ];
        let s = s.trim().replace('-', "_");
        all.into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown QU strategy {s:?}")))
    }
}

/// SR slots blanked (or reordered) for ablation runs.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AblationMask {
    pub slots: BTreeSet<AblatedSlot>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AblatedSlot {
    Context,
    QuestionEntity,
    Predicate,
    Type,
    Ordering,
}

impl FromStr for AblatedSlot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('-', "_").as_str() {
            "context" => Ok(AblatedSlot::Context),
            "question_entity" => Ok(AblatedSlot::QuestionEntity),
            "predicate" => Ok(AblatedSlot::Predicate),
            "type" | "answer_type" => Ok(AblatedSlot::Type),
            "ordering" => Ok(AblatedSlot::Ordering),
            other => Err(Error::InvalidInput(format!("unknown SR slot {other:?}"))),
        }
    }
}

impl FromStr for AblationMask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let slots = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(AblatedSlot::from_str)
            .collect::<Result<_>>()?;
        Ok(AblationMask { slots })
    }
}

impl AblationMask {
    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn contains(&self, slot: AblatedSlot) -> bool {
        self.slots.contains(&slot)
    }

    /// Blank the masked slots.
    pub fn apply(&self, sr: &StructuredRepresentation) -> StructuredRepresentation {
        let mut out = sr.clone();
        for (ablated, slot) in [
            (AblatedSlot::Context, Slot::Context),
            (AblatedSlot::QuestionEntity, Slot::QuestionEntity),
            (AblatedSlot::Predicate, Slot::Predicate),
            (AblatedSlot::Type, Slot::AnswerType),
        ] {
            if self.contains(ablated) {
                out.blank(slot);
            }
        }
        out
    }

    /// Slot order used when the SR is handed to a sequence-aware reader.
    pub fn slot_order(&self) -> [Slot; 4] {
        if self.contains(AblatedSlot::Ordering) {
            [Slot::Predicate, Slot::AnswerType, Slot::QuestionEntity, Slot::Context]
        } else {
            Slot::CANONICAL_ORDER
        }
    }
}

/// Which SR generator to use.
pub enum SrGenerator<'a> {
    Heuristic(&'a Corpus),
    /// External service, optionally falling back to the heuristic.
    External {
        client: &'a ExternalSrClient,
        fallback: Option<&'a Corpus>,
    },
}

pub fn generate_sr(
    history: &ConversationHistory,
    question: &str,
    generator: &SrGenerator<'_>,
) -> Result<StructuredRepresentation> {
    match generator {
        SrGenerator::Heuristic(corpus) => Ok(heuristic_sr(history, question, corpus)),
        SrGenerator::External { client, fallback } => match client.generate(history, question) {
            Ok(sr) => Ok(sr),
            Err(Error::Transport(msg)) if fallback.is_some() => {
                log::warn!("external QU unavailable ({msg}); using heuristic SR");
                Ok(heuristic_sr(history, question, fallback.unwrap()))
            }
            Err(e) => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_names_round_trip() {
        for s in ["prepend_init", "prepend-all", "heuristic_sr", "external_sr", "gold_sr"] {
            let v: QuStrategy = s.parse().unwrap();
            assert_eq!(v.as_str(), s.replace('-', "_"));
        }
        assert!("bart".parse::<QuStrategy>().is_err());
    }

    #[test]
    fn ablation_blanks_slots() {
        let mask: AblationMask = "type,question_entity".parse().unwrap();
        let sr = StructuredRepresentation::parse("GoT | the dwarf | who played | human").unwrap();
        assert_eq!(mask.apply(&sr).serialize(), "GoT | _ | who played | _");
        assert_eq!(mask.slot_order(), Slot::CANONICAL_ORDER);
        let ord: AblationMask = "ordering".parse().unwrap();
        assert_eq!(ord.apply(&sr), sr);
        assert_eq!(sr.serialize_in(ord.slot_order()), "who played | human | the dwarf | GoT");
        assert!("colour".parse::<AblationMask>().is_err());
    }
}
