use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

const SLOT_SEPARATOR: &str = " | ";
const BLANK: &str = "_";
const MENTION_JOINER: &str = " and ";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Context,
    QuestionEntity,
    Predicate,
    AnswerType,
}

impl Slot {
    pub const CANONICAL_ORDER: [Slot; 4] =
        [Slot::Context, Slot::QuestionEntity, Slot::Predicate, Slot::AnswerType];

    pub fn name(self) -> &'static str {
        match self {
            Slot::Context => "context",
            Slot::QuestionEntity => "question_entity",
            Slot::Predicate => "predicate",
            Slot::AnswerType => "type",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SrError {
    #[error("expected 4 slots separated by '|', found {0}")]
    Arity(usize),
    #[error("slot {} contains '|'", .0.name())]
    Separator(Slot),
    #[error("slot {} contains an empty mention", .0.name())]
    EmptyMention(Slot),
}

impl SrError {
    /// The slot the diagnostic refers to, if any.
    pub fn slot(&self) -> Option<Slot> {
        match self {
            SrError::Arity(_) => None,
            SrError::Separator(s) | SrError::EmptyMention(s) => Some(*s),
        }
    }
}

/// Intent-explicit frame: context entities | question entities | predicate |
/// expected answer type. Every slot may be blank.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StructuredRepresentation {
    pub context_entities: Vec<String>,
    pub question_entities: Vec<String>,
    pub predicate: String,
    pub answer_type: String,
}

fn parse_mentions(slot: &str) -> Vec<String> {
    if slot == BLANK || slot.is_empty() {
        return Vec::new();
    }
    slot.split(MENTION_JOINER).map(|m| m.trim().to_string()).collect()
}

fn parse_text(slot: &str) -> String {
    if slot == BLANK {
        String::new()
    } else {
        slot.to_string()
    }
}

impl StructuredRepresentation {
    pub fn new(
        context_entities: Vec<String>,
        question_entities: Vec<String>,
        predicate: impl Into<String>,
        answer_type: impl Into<String>,
    ) -> Self {
        StructuredRepresentation {
            context_entities,
            question_entities,
            predicate: predicate.into(),
            answer_type: answer_type.into(),
        }
    }

    pub fn slot_text(&self, slot: Slot) -> String {
        let text = match slot {
            Slot::Context => self.context_entities.join(MENTION_JOINER),
            Slot::QuestionEntity => self.question_entities.join(MENTION_JOINER),
            Slot::Predicate => self.predicate.clone(),
            Slot::AnswerType => self.answer_type.clone(),
        };
        if text.trim().is_empty() {
            BLANK.to_string()
        } else {
            text
        }
    }

    /// `"<ctx> | <qent> | <pred> | <type>"`, blanks as `_`.
    pub fn serialize(&self) -> String {
        self.serialize_in(Slot::CANONICAL_ORDER)
    }

    pub fn serialize_in(&self, order: [Slot; 4]) -> String {
        order
            .iter()
            .map(|s| self.slot_text(*s))
            .collect::<Vec<_>>()
            .join(SLOT_SEPARATOR)
    }

    pub fn parse(text: &str) -> Result<Self, SrError> {
        let parts: Vec<&str> = text.split('|').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(SrError::Arity(parts.len()));
        }
        let sr = StructuredRepresentation {
            context_entities: parse_mentions(parts[0]),
            question_entities: parse_mentions(parts[1]),
            predicate: parse_text(parts[2]),
            answer_type: parse_text(parts[3]),
        };
        sr.validate()?;
        Ok(sr)
    }

    pub fn validate(&self) -> Result<(), SrError> {
        for (slot, mentions) in [
            (Slot::Context, &self.context_entities),
            (Slot::QuestionEntity, &self.question_entities),
        ] {
            if mentions.iter().any(|m| m.contains('|')) {
                return Err(SrError::Separator(slot));
            }
            if mentions.iter().any(|m| m.trim().is_empty()) {
                return Err(SrError::EmptyMention(slot));
            }
        }
        if self.predicate.contains('|') {
            return Err(SrError::Separator(Slot::Predicate));
        }
        if self.answer_type.contains('|') {
            return Err(SrError::Separator(Slot::AnswerType));
        }
        Ok(())
    }

    pub fn entity_mentions(&self) -> impl Iterator<Item = &String> {
        self.context_entities.iter().chain(&self.question_entities)
    }

    /// Slot contents as a keyword query (separators and blanks removed).
    pub fn query_text(&self, include_answer_type: bool) -> String {
        let mut parts: Vec<&str> = self.entity_mentions().map(String::as_str).collect();
        parts.push(&self.predicate);
        if include_answer_type {
            parts.push(&self.answer_type);
        }
        parts
            .into_iter()
            .map(str::trim)
            .filter(|p| !p.is_empty() && *p != BLANK)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn blank(&mut self, slot: Slot) {
        match slot {
            Slot::Context => self.context_entities.clear(),
            Slot::QuestionEntity => self.question_entities.clear(),
            Slot::Predicate => self.predicate.clear(),
            Slot::AnswerType => self.answer_type.clear(),
        }
    }

    pub fn is_blank(&self) -> bool {
        self.context_entities.is_empty()
            && self.question_entities.is_empty()
            && self.predicate.trim().is_empty()
            && self.answer_type.trim().is_empty()
    }
}

impl fmt::Display for StructuredRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for StructuredRepresentation {
    type Err = SrError;

    fn from_str(s: &str) -> Result<Self, SrError> {
        StructuredRepresentation::parse(s)
    }
}
