//! ConvMix-format conversations: loading, saving and train/dev/test splits.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{normalize_literal, EntityId, KbItem};
use crate::error::{Error, Result};
use crate::source::Source;

const WIKIDATA_PREFIX: &str = "https://www.wikidata.org/wiki/";
const MAX_ANSWERS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Domain {
    Books,
    Movies,
    Music,
    #[serde(rename = "TV series")]
    TvSeries,
    Soccer,
}

impl Domain {
    pub const ALL: [Domain; 5] = [
        Domain::Books,
        Domain::Movies,
        Domain::Music,
        Domain::TvSeries,
        Domain::Soccer,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Books => "Books",
            Domain::Movies => "Movies",
            Domain::Music => "Music",
            Domain::TvSeries => "TV series",
            Domain::Soccer => "Soccer",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldAnswer {
    pub label: String,
    pub kb_id: Option<KbItem>,
}

impl GoldAnswer {
    /// Entity answers carry a Wikidata URL; anything else is normalized
    /// as a literal (dates, years, numbers, or plain strings).
    pub fn new(label: &str, wikidata_url: Option<&str>) -> Self {
        let kb_id = match wikidata_url.and_then(entity_from_url) {
            Some(id) => Some(KbItem::Entity(id)),
            None => Some(KbItem::literal(&normalize_literal(label))),
        };
        GoldAnswer {
            label: label.to_string(),
            kb_id,
        }
    }

    pub fn entity(label: &str, id: &str) -> Self {
        GoldAnswer {
            label: label.to_string(),
            kb_id: Some(KbItem::Entity(EntityId::new(id))),
        }
    }
}

/// `https://www.wikidata.org/wiki/Q123` -> `Q123`. Bare ids pass through.
pub fn entity_from_url(url: &str) -> Option<EntityId> {
    let id = url.trim().trim_end_matches('/').rsplit('/').next()?;
    (!id.is_empty()).then(|| EntityId::new(id))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Turn {
    pub index: usize,
    pub question: String,
    pub gold_answers: Vec<GoldAnswer>,
    pub completed_question: Option<String>,
    pub paraphrase: Option<String>,
    pub question_entities: Vec<EntityId>,
    pub sources_used: Vec<Source>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conversation {
    pub conv_id: String,
    pub domain: Domain,
    pub turns: Vec<Turn>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkSplit {
    pub train: Vec<Conversation>,
    pub dev: Vec<Conversation>,
    pub test: Vec<Conversation>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AnswerRecord {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    wikidata_url: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TurnRecord {
    question: String,
    answers: Vec<AnswerRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    completed: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    paraphrase: Option<String>,
    #[serde(default)]
    entities: Vec<String>,
    #[serde(default)]
    sources: Vec<Source>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConversationRecord {
    conv_id: String,
    domain: Domain,
    turns: Vec<TurnRecord>,
}

fn convert(rec: ConversationRecord, path: &Path) -> Result<Conversation> {
    let schema = |field: String, message: &str| Error::Schema {
        path: path.to_path_buf(),
        record: format!("conversation {}", rec.conv_id),
        message: format!("{field}: {message}"),
    };
    let mut turns = Vec::with_capacity(rec.turns.len());
    for (index, t) in rec.turns.iter().enumerate() {
        if t.question.trim().is_empty() {
            return Err(schema(format!("turns[{index}].question"), "empty question"));
        }
        if t.answers.is_empty() {
            return Err(schema(format!("turns[{index}].answers"), "no gold answers"));
        }
        if let Some(i) = t.answers.iter().position(|a| a.label.trim().is_empty()) {
            return Err(schema(format!("turns[{index}].answers[{i}].label"), "empty label"));
        }
        if t.answers.len() > MAX_ANSWERS {
            log::warn!(
                "conversation {} turn {index}: {} gold answers (benchmark maximum is {MAX_ANSWERS})",
                rec.conv_id,
                t.answers.len()
            );
        }
        turns.push(Turn {
            index,
            question: t.question.clone(),
            gold_answers: t
                .answers
                .iter()
                .map(|a| GoldAnswer::new(&a.label, a.wikidata_url.as_deref()))
                .collect(),
            completed_question: t.completed.clone(),
            paraphrase: t.paraphrase.clone(),
            question_entities: t.entities.iter().map(|e| EntityId::new(e.as_str())).collect(),
            sources_used: t.sources.clone(),
        });
    }
    Ok(Conversation {
        conv_id: rec.conv_id,
        domain: rec.domain,
        turns,
    })
}

pub fn parse_convmix(text: &str, path: &Path) -> Result<Vec<Conversation>> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| Error::json(path, &e))?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(raw.len());
    for (i, value) in raw.into_iter().enumerate() {
        let name = value
            .get("conv_id")
            .and_then(|v| v.as_str())
            .map_or_else(|| format!("#{i}"), str::to_string);
        let rec: ConversationRecord = serde_json::from_value(value).map_err(|e| Error::Schema {
            path: path.to_path_buf(),
            record: format!("conversation {name}"),
            message: e.to_string(),
        })?;
        if !seen.insert(rec.conv_id.clone()) {
            return Err(Error::Schema {
                path: path.to_path_buf(),
                record: format!("conversation {name}"),
                message: "conv_id: duplicate".into(),
            });
        }
        out.push(convert(rec, path)?);
    }
    Ok(out)
}

pub fn load_convmix(path: impl AsRef<Path>) -> Result<Vec<Conversation>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_convmix(&text, path)
}

pub fn to_convmix_json(convs: &[Conversation]) -> String {
    let records: Vec<ConversationRecord> = convs
        .iter()
        .map(|c| ConversationRecord {
            conv_id: c.conv_id.clone(),
            domain: c.domain,
            turns: c
                .turns
                .iter()
                .map(|t| TurnRecord {
                    question: t.question.clone(),
                    answers: t
                        .gold_answers
                        .iter()
                        .map(|a| AnswerRecord {
                            label: a.label.clone(),
                            wikidata_url: match &a.kb_id {
                                Some(KbItem::Entity(id)) => Some(format!("{WIKIDATA_PREFIX}{id}")),
                                _ => None,
                            },
                        })
                        .collect(),
                    completed: t.completed_question.clone(),
                    paraphrase: t.paraphrase.clone(),
                    entities: t.question_entities.iter().map(|e| e.to_string()).collect(),
                    sources: t.sources_used.clone(),
                })
                .collect(),
        })
        .collect();
    serde_json::to_string_pretty(&records).expect("conversation records serialize")
}

pub fn save_convmix(convs: &[Conversation], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_convmix_json(convs) + "\n").map_err(|e| Error::io(path, e))
}

/// Seeded shuffle, then a 60:20:20 partition by conversation. Dev and test
/// sizes are rounded down; train takes the remainder.
pub fn split_convmix(convs: &[Conversation], seed: u64) -> BenchmarkSplit {
    let mut shuffled = convs.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    shuffled.shuffle(&mut rng);
    let n = shuffled.len();
    let held_out = n / 5;
    let test = shuffled.split_off(n - held_out);
    let dev = shuffled.split_off(n - 2 * held_out);
    BenchmarkSplit {
        train: shuffled,
        dev,
        test,
    }
}
