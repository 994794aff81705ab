//! Question understanding, retrieval and answering wired together, plus
//! batch runs over benchmark conversations.

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::answering::{extractive_answer, ExternalReaderClient, PredictedAnswer};
use crate::benchmark::Conversation;
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::evaluation::{normalize_answer, EvidenceDigest, RunRecord};
use crate::qu::{
    build_cfg, generate_sr, prepend, AblationMask, ConversationHistory, ConversationalFlowGraph, ExternalSrClient,
    QuStrategy, SrGenerator, StructuredRepresentation,
};
use crate::retrieval::{sr_query, CorpusRetriever, RankedEvidence, Retriever, RetrieverConfig};
use crate::supervision::{label_conversation, LabeledTurn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HistoryMode {
    /// Earlier turns carry the benchmark's gold answers.
    #[default]
    Gold,
    /// Earlier turns carry the system's own predictions.
    Predicted,
}

impl std::str::FromStr for HistoryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gold" => Ok(HistoryMode::Gold),
            "predicted" => Ok(HistoryMode::Predicted),
            other => Err(Error::InvalidInput(format!("unknown history mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswererVariant {
    #[default]
    Extractive,
    External,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub qu: QuStrategy,
    pub qu_endpoint: Option<String>,
    pub retriever: RetrieverConfig,
    pub ablate: AblationMask,
    pub answerer: AnswererVariant,
    pub reader_endpoint: Option<String>,
    pub history_mode: HistoryMode,
    /// Fall back to the heuristic SR / extractive answerer when an external
    /// service is unreachable.
    pub fallback: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            qu: QuStrategy::HeuristicSr,
            qu_endpoint: None,
            retriever: RetrieverConfig::default(),
            ablate: AblationMask::default(),
            answerer: AnswererVariant::Extractive,
            reader_endpoint: None,
            history_mode: HistoryMode::Gold,
            fallback: true,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.retriever.validate()?;
        match (self.qu, &self.qu_endpoint) {
            (QuStrategy::ExternalSr, None) => {
                return Err(Error::InvalidInput("qu external_sr needs qu_endpoint".into()));
            }
            (q, Some(_)) if q != QuStrategy::ExternalSr => {
                return Err(Error::InvalidInput(format!("qu_endpoint is set but qu is {q}")));
            }
            _ => {}
        }
        match (self.answerer, &self.reader_endpoint) {
            (AnswererVariant::External, None) => {
                Err(Error::InvalidInput("external answerer needs reader_endpoint".into()))
            }
            (AnswererVariant::Extractive, Some(_)) => {
                Err(Error::InvalidInput("reader_endpoint is set but the answerer is extractive".into()))
            }
            _ => Ok(()),
        }
    }

    /// Reads a `.toml` or `.json` file (by extension; anything else is
    /// tried as TOML).
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: PipelineConfig = if path.extension().is_some_and(|x| x == "json") {
            serde_json::from_str(&text).map_err(|e| Error::json(path, &e))?
        } else {
            toml::from_str(&text).map_err(|e| {
                let (line, column) = e
                    .span()
                    .map(|s| line_col(&text, s.start))
                    .unwrap_or((0, 0));
                Error::Parse {
                    path: path.to_path_buf(),
                    line,
                    column,
                    message: e.message().to_string(),
                }
            })?
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, column)
}

/// Everything produced for one question.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnOutput {
    pub question: String,
    /// `None` for the prepend baselines, which produce a plain query.
    pub sr: Option<StructuredRepresentation>,
    pub query: String,
    pub cfg: Option<ConversationalFlowGraph>,
    pub ranked: Vec<RankedEvidence>,
    pub answer: PredictedAnswer,
}

impl TurnOutput {
    pub fn run_record(&self, conv_id: &str, turn: usize) -> RunRecord {
        let digests: Vec<EvidenceDigest> = self.ranked.iter().map(EvidenceDigest::from_ranked).collect();
        let mentions: Vec<_> = digests.iter().flat_map(|d| d.mentions.iter().cloned()).collect();
        RunRecord {
            conv_id: conv_id.to_string(),
            turn,
            prediction_raw: self.answer.raw.clone(),
            normalized: Some(normalize_answer(&self.answer.raw, &mentions)),
            top_evidence_ids: digests.iter().map(|d| d.evidence_id.clone()).collect(),
            answer_presence_inputs: digests,
        }
    }
}

pub struct Pipeline<'a> {
    corpus: &'a Corpus,
    config: PipelineConfig,
    retriever: CorpusRetriever<'a>,
    qu_client: Option<ExternalSrClient>,
    reader: Option<ExternalReaderClient>,
}

impl<'a> Pipeline<'a> {
    pub fn new(corpus: &'a Corpus, config: PipelineConfig) -> Result<Self> {
        config.validate()?;
        Ok(Pipeline {
            corpus,
            retriever: CorpusRetriever::new(corpus, config.retriever.clone()),
            qu_client: config.qu_endpoint.as_deref().map(ExternalSrClient::new),
            reader: config.reader_endpoint.as_deref().map(ExternalReaderClient::new),
            config,
        })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn corpus(&self) -> &'a Corpus {
        self.corpus
    }

    /// The SR for `question` (before ablation), or `None` for prepend
    /// strategies. `gold_sr` is required by the gold-SR strategy.
    pub fn understand(
        &self,
        history: &ConversationHistory,
        question: &str,
        gold_sr: Option<&StructuredRepresentation>,
    ) -> Result<Option<StructuredRepresentation>> {
        let sr = match self.config.qu {
            QuStrategy::HeuristicSr => generate_sr(history, question, &SrGenerator::Heuristic(self.corpus))?,
            QuStrategy::ExternalSr => {
                let client = self.qu_client.as_ref().expect("validated");
                let fallback = self.config.fallback.then_some(self.corpus);
                generate_sr(history, question, &SrGenerator::External { client, fallback })?
            }
            QuStrategy::GoldSr => gold_sr
                .cloned()
                .ok_or_else(|| Error::InvalidInput("gold_sr strategy needs a labeled SR".into()))?,
            _ => return Ok(None),
        };
        Ok(Some(sr))
    }

    /// Retrieval and answering for a given SR (already final; no ablation
    /// is applied here).
    pub fn answer_from_sr(
        &self,
        history: &ConversationHistory,
        question: &str,
        sr: StructuredRepresentation,
    ) -> Result<TurnOutput> {
        let query = sr_query(&sr, &self.config.retriever);
        let cfg = build_cfg(&sr, history, question, self.corpus.stopwords());
        let ranked = self.retriever.retrieve(&query)?;
        let answer = match &self.reader {
            None => extractive_answer(&sr, &ranked, self.corpus),
            Some(reader) => reader.answer_or_extract(
                &sr,
                self.config.ablate.slot_order(),
                &ranked,
                self.config.fallback.then_some(self.corpus),
            )?,
        };
        Ok(TurnOutput {
            question: question.to_string(),
            sr: Some(sr),
            query,
            cfg: Some(cfg),
            ranked,
            answer,
        })
    }

    /// One question given its history.
    pub fn answer_turn(
        &self,
        history: &ConversationHistory,
        question: &str,
        gold_sr: Option<&StructuredRepresentation>,
    ) -> Result<TurnOutput> {
        if let Some(sr) = self.understand(history, question, gold_sr)? {
            return self.answer_from_sr(history, question, self.config.ablate.apply(&sr));
        }
        let mode = self.config.qu.prepend_mode().expect("non-SR strategies are prepend");
        let query = prepend(history, question, mode);
        let ranked = self.retriever.retrieve(&query)?;
        // the expanded query stands in for the SR: its lexicon matches are
        // excluded as question entities, and there is no answer-type bonus
        let pseudo = StructuredRepresentation {
            question_entities: self.corpus.match_mentions(&query).into_iter().map(|m| m.surface).collect(),
            predicate: query.clone(),
            ..Default::default()
        };
        let answer = match &self.reader {
            None => extractive_answer(&pseudo, &ranked, self.corpus),
            Some(reader) => match reader.answer(&query, &ranked) {
                Err(Error::Transport(msg)) if self.config.fallback => {
                    log::warn!("reader unavailable ({msg}); using extractive answer");
                    extractive_answer(&pseudo, &ranked, self.corpus)
                }
                other => other?,
            },
        };
        Ok(TurnOutput {
            question: question.to_string(),
            sr: None,
            query,
            cfg: None,
            ranked,
            answer,
        })
    }

    /// Gold SRs for a conversation, from distant supervision.
    pub fn label(&self, conversation: &Conversation) -> Result<Vec<LabeledTurn>> {
        label_conversation(conversation, self.corpus, &self.retriever)
    }

    /// All turns of one conversation, in order, with history per the
    /// configured mode.
    pub fn run_conversation(&self, conversation: &Conversation) -> Result<Vec<TurnOutput>> {
        let labels = match self.config.qu {
            QuStrategy::GoldSr => Some(self.label(conversation)?),
            _ => None,
        };
        let mut history = ConversationHistory::new();
        let mut out = Vec::with_capacity(conversation.turns.len());
        for (i, turn) in conversation.turns.iter().enumerate() {
            let gold_sr = labels.as_ref().map(|l| &l[i].gold_sr);
            let output = self.answer_turn(&history, &turn.question, gold_sr)?;
            let answers = match self.config.history_mode {
                HistoryMode::Gold => turn.gold_answers.iter().map(|g| g.label.clone()).collect(),
                HistoryMode::Predicted => vec![output.answer.raw.clone()],
            };
            history.push(turn.question.clone(), answers);
            out.push(output);
        }
        Ok(out)
    }

    /// Runs every conversation; outputs keyed by conversation id.
    pub fn run(&self, conversations: &[Conversation]) -> Result<RunOutput> {
        let mut records = Vec::new();
        let mut outputs = HashMap::new();
        for conv in conversations {
            let turns = self.run_conversation(conv)?;
            records.extend(turns.iter().enumerate().map(|(i, t)| t.run_record(&conv.conv_id, i)));
            outputs.insert(conv.conv_id.clone(), turns);
        }
        Ok(RunOutput { records, outputs })
    }
}

pub struct RunOutput {
    pub records: Vec<RunRecord>,
    pub outputs: HashMap<String, Vec<TurnOutput>>,
}

pub fn write_run<W: Write>(mut out: W, records: &[RunRecord]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
