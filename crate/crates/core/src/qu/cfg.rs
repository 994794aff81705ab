//! Conversational flow graph: which earlier turns supplied the SR's words.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{ConversationHistory, Slot, StructuredRepresentation};
use crate::text::{self, Stopwords};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Question,
    Answer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowNode {
    /// `q<turn>` or `a<turn>`.
    pub id: String,
    pub turn: usize,
    pub kind: NodeKind,
    pub text: String,
}

/// Edge from the current question to an earlier turn.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowEdge {
    pub from_turn: usize,
    pub to_turn: usize,
    /// Nodes of the target turn where the words were found.
    pub targets: Vec<NodeKind>,
    pub words: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversationalFlowGraph {
    pub nodes: Vec<FlowNode>,
    pub edges: Vec<FlowEdge>,
    pub self_sufficient: bool,
}

impl ConversationalFlowGraph {
    pub fn current_turn(&self) -> usize {
        self.nodes.last().map_or(0, |n| n.turn)
    }
}

/// Every non-stopword SR word that does not occur in the current question
/// is attributed to the most recent history turn containing it (exact,
/// case-insensitive token match). One edge per attributed turn.
pub fn build_cfg(
    sr: &StructuredRepresentation,
    history: &ConversationHistory,
    question: &str,
    stopwords: &Stopwords,
) -> ConversationalFlowGraph {
    let current = history.len();
    let mut nodes = Vec::with_capacity(2 * current + 1);
    for (i, t) in history.turns.iter().enumerate() {
        nodes.push(FlowNode {
            id: format!("q{i}"),
            turn: i,
            kind: NodeKind::Question,
            text: t.question.clone(),
        });
        nodes.push(FlowNode {
            id: format!("a{i}"),
            turn: i,
            kind: NodeKind::Answer,
            text: t.answers.join(", "),
        });
    }
    nodes.push(FlowNode {
        id: format!("q{current}"),
        turn: current,
        kind: NodeKind::Question,
        text: question.to_string(),
    });

    let in_question: HashSet<String> = text::tokenize(question).into_iter().collect();
    let turn_tokens: Vec<(HashSet<String>, HashSet<String>)> = history
        .turns
        .iter()
        .map(|t| {
            (
                text::tokenize(&t.question).into_iter().collect(),
                t.answers.iter().flat_map(|a| text::tokenize(a)).collect(),
            )
        })
        .collect();

    let mut sr_words = Vec::new();
    for slot in Slot::CANONICAL_ORDER {
        let slot_text = sr.slot_text(slot);
        if slot_text == "_" {
            continue;
        }
        sr_words.extend(text::tokens(&slot_text).into_iter().map(|t| (t.text.to_string(), t.lower)));
    }

    let mut by_turn: BTreeMap<usize, (Vec<String>, Vec<NodeKind>)> = BTreeMap::new();
    let mut done = HashSet::new();
    for (surface, lower) in sr_words {
        if stopwords.contains(&lower) || in_question.contains(&lower) || !done.insert(lower.clone()) {
            continue;
        }
        let hit = turn_tokens.iter().enumerate().rev().find_map(|(i, (q, a))| {
            let mut kinds = Vec::new();
            if q.contains(&lower) {
                kinds.push(NodeKind::Question);
            }
            if a.contains(&lower) {
                kinds.push(NodeKind::Answer);
            }
            (!kinds.is_empty()).then_some((i, kinds))
        });
        if let Some((turn, kinds)) = hit {
            let entry = by_turn.entry(turn).or_default();
            entry.0.push(surface);
            for k in kinds {
                if !entry.1.contains(&k) {
                    entry.1.push(k);
                }
            }
        }
    }

    let edges: Vec<FlowEdge> = by_turn
        .into_iter()
        .map(|(to_turn, (words, mut targets))| {
            targets.sort();
            FlowEdge {
                from_turn: current,
                to_turn,
                targets,
                words,
            }
        })
        .collect();
    ConversationalFlowGraph {
        self_sufficient: edges.is_empty(),
        nodes,
        edges,
    }
}
