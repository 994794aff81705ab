use serde::{Deserialize, Serialize};

use super::ConversationHistory;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrependMode {
    Init,
    Prev,
    InitPrev,
    All,
}

/// Prepend selected history turns (question, then answers) to the question.
pub fn prepend(history: &ConversationHistory, question: &str, mode: PrependMode) -> String {
    let n = history.len();
    let selected: Vec<usize> = match (mode, n) {
        (_, 0) => vec![],
        (PrependMode::Init, _) => vec![0],
        (PrependMode::Prev, _) => vec![n - 1],
        (PrependMode::InitPrev, 1) => vec![0],
        (PrependMode::InitPrev, _) => vec![0, n - 1],
        (PrependMode::All, _) => (0..n).collect(),
    };
    let mut parts: Vec<&str> = Vec::new();
    for i in selected {
        let turn = &history.turns[i];
        parts.push(&turn.question);
        parts.extend(turn.answers.iter().map(String::as_str));
    }
    parts.push(question);
    parts
        .into_iter()
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}
