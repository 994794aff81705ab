//! Answering from the top-e evidences: a built-in extractive answerer, a
//! client for an external generative reader, and reader training data.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::benchmark::GoldAnswer;
use crate::corpus::{Corpus, KbItem};
use crate::error::{Error, Result};
use crate::http::JsonClient;
use crate::qu::{Slot, StructuredRepresentation};
use crate::retrieval::RankedEvidence;
use crate::supervision::is_answering;
use crate::text;

pub const NO_ANSWER: &str = "no answer";
pub const MAX_ANSWER_WORDS: usize = 10;
pub const DEFAULT_READER_TIMEOUT: Duration = Duration::from_secs(10);
const TYPE_BONUS: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedAnswer {
    /// The answer string, or [`NO_ANSWER`].
    pub raw: String,
    pub normalized: Option<KbItem>,
    pub supporting_evidence_ids: Vec<String>,
}

impl PredictedAnswer {
    pub fn no_answer() -> Self {
        PredictedAnswer {
            raw: NO_ANSWER.to_string(),
            normalized: None,
            supporting_evidence_ids: Vec::new(),
        }
    }

    pub fn is_no_answer(&self) -> bool {
        self.raw == NO_ANSWER
    }
}

fn item_type<'a>(item: &'a KbItem, corpus: &'a Corpus) -> Option<&'a str> {
    match item {
        KbItem::Entity(id) => corpus.entity(id).and_then(|e| e.main_type()),
        KbItem::Literal { kind, .. } => Some(kind.as_str()),
    }
}

/// Surfaces and KB items standing for the SR's own entity mentions.
fn excluded(sr: &StructuredRepresentation, corpus: &Corpus) -> (HashSet<String>, HashSet<KbItem>) {
    let mut keys = HashSet::new();
    let mut items = HashSet::new();
    for m in sr.entity_mentions() {
        let key = text::normalize_key(m);
        for e in corpus.lexicon_lookup(&key) {
            items.insert(KbItem::Entity(e.entity.clone()));
        }
        keys.insert(key);
    }
    (keys, items)
}

struct Tally {
    score: f64,
    best_rank: usize,
    surface: String,
    support: Vec<String>,
}

/// Mention voting: each candidate KB item collects the BM25 score of every
/// evidence mentioning it, doubled when its type (main entity type or
/// literal kind) equals the SR answer type. Mentions of the SR's own
/// entities are skipped. Ties go to the better best rank, then the smaller
/// item key.
pub fn extractive_answer(sr: &StructuredRepresentation, ranked: &[RankedEvidence], corpus: &Corpus) -> PredictedAnswer {
    let (skip_keys, skip_items) = excluded(sr, corpus);
    let want = sr.answer_type.trim().to_lowercase();
    let mut tally: BTreeMap<KbItem, Tally> = BTreeMap::new();
    for r in ranked {
        let mut counted = HashSet::new();
        for m in &r.evidence.mentions {
            if skip_items.contains(&m.item) || skip_keys.contains(&text::normalize_key(&m.surface)) {
                continue;
            }
            if !counted.insert(&m.item) {
                continue;
            }
            let bonus = match item_type(&m.item, corpus) {
                Some(t) if !want.is_empty() && t.to_lowercase() == want => TYPE_BONUS,
                _ => 1.0,
            };
            let t = tally.entry(m.item.clone()).or_insert_with(|| Tally {
                score: 0.0,
                best_rank: r.rank,
                surface: m.surface.clone(),
                support: Vec::new(),
            });
            t.score += r.bm25 * bonus;
            t.support.push(r.evidence.evidence_id.clone());
        }
    }
    let best = tally.into_iter().min_by(|(ka, a), (kb, b)| {
        b.score
            .total_cmp(&a.score)
            .then(a.best_rank.cmp(&b.best_rank))
            .then_with(|| ka.key().cmp(&kb.key()))
    });
    match best {
        Some((item, t)) => PredictedAnswer {
            raw: t.surface,
            normalized: Some(item),
            supporting_evidence_ids: t.support,
        },
        None => PredictedAnswer::no_answer(),
    }
}

#[derive(Serialize)]
struct ReaderRequest<'a> {
    question: &'a str,
    passages: Vec<&'a str>,
}

#[derive(Deserialize)]
struct ReaderResponse {
    answer: String,
}

/// Client for an external generative reader: POSTs
/// `{question, passages}` and expects `{answer}`.
#[derive(Debug, Clone)]
pub struct ExternalReaderClient {
    client: JsonClient,
}

impl ExternalReaderClient {
    pub fn new(endpoint: impl Into<String>) -> Self {
        Self::with_timeout(endpoint, DEFAULT_READER_TIMEOUT)
    }

    pub fn with_timeout(endpoint: impl Into<String>, timeout: Duration) -> Self {
        ExternalReaderClient {
            client: JsonClient::new(endpoint, timeout),
        }
    }

    pub fn endpoint(&self) -> &str {
        self.client.endpoint()
    }

    /// `question` is the SR serialized in the slot order the reader was
    /// trained on.
    pub fn answer(&self, question: &str, ranked: &[RankedEvidence]) -> Result<PredictedAnswer> {
        let resp: ReaderResponse = self.client.post(&ReaderRequest {
            question,
            passages: ranked.iter().map(|r| r.evidence.text.as_str()).collect(),
        })?;
        let words: Vec<&str> = resp.answer.split_whitespace().collect();
        if words.is_empty() {
            return Ok(PredictedAnswer::no_answer());
        }
        let raw = if words.len() > MAX_ANSWER_WORDS {
            log::warn!(
                "reader answer has {} words; truncating to {MAX_ANSWER_WORDS}",
                words.len()
            );
            words[..MAX_ANSWER_WORDS].join(" ")
        } else {
            words.join(" ")
        };
        Ok(PredictedAnswer {
            raw,
            normalized: None,
            supporting_evidence_ids: Vec::new(),
        })
    }

    /// Like [`answer`](Self::answer), but transport failures fall back to
    /// the extractive answerer when `fallback` is set.
    pub fn answer_or_extract(
        &self,
        sr: &StructuredRepresentation,
        order: [Slot; 4],
        ranked: &[RankedEvidence],
        fallback: Option<&Corpus>,
    ) -> Result<PredictedAnswer> {
        match self.answer(&sr.serialize_in(order), ranked) {
            Err(Error::Transport(msg)) if fallback.is_some() => {
                log::warn!("reader unavailable ({msg}); using extractive answer");
                Ok(extractive_answer(sr, ranked, fallback.unwrap()))
            }
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HaTrainingInstance {
    pub sr_text: String,
    pub evidences: Vec<String>,
    pub gold_answer: String,
}

/// One question's retrieval output with its gold answers.
#[derive(Debug, Clone)]
pub struct TrainingRun {
    pub sr_text: String,
    pub ranked: Vec<RankedEvidence>,
    pub golds: Vec<GoldAnswer>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet {
    pub instances: Vec<HaTrainingInstance>,
    pub dropped: usize,
}

/// Keeps the runs whose top-e contain at least one answering evidence.
pub fn prepare_training_set(runs: &[TrainingRun]) -> TrainingSet {
    let mut instances = Vec::new();
    let mut dropped = 0;
    for run in runs {
        let Some(gold) = run.golds.first() else {
            dropped += 1;
            continue;
        };
        if run.ranked.iter().any(|r| is_answering(&r.evidence, &run.golds)) {
            instances.push(HaTrainingInstance {
                sr_text: run.sr_text.clone(),
                evidences: run.ranked.iter().map(|r| r.evidence.text.clone()).collect(),
                gold_answer: gold.label.clone(),
            });
        } else {
            dropped += 1;
        }
    }
    if dropped > 0 {
        log::info!("training set: kept {}, dropped {dropped} without an answering evidence", instances.len());
    }
    TrainingSet { instances, dropped }
}

#[derive(Serialize)]
struct Ctx<'a> {
    text: &'a str,
}

#[derive(Serialize)]
struct TrainingLine<'a> {
    question: &'a str,
    ctxs: Vec<Ctx<'a>>,
    target: &'a str,
}

/// `{question, ctxs: [{text}], target}` per line.
pub fn write_training_set<W: Write>(mut out: W, instances: &[HaTrainingInstance]) -> std::io::Result<()> {
    for i in instances {
        let line = TrainingLine {
            question: &i.sr_text,
            ctxs: i.evidences.iter().map(|t| Ctx { text: t }).collect(),
            target: &i.gold_answer,
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
