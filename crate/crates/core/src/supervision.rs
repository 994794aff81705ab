//! Distant supervision: derive gold SRs from (question, gold answer)
//! conversations by finding the entity mentions that bring in answering
//! evidences.

use std::collections::HashSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::benchmark::{Conversation, GoldAnswer};
use crate::corpus::{find_literals, Corpus, EntityId, KbItem, KbObject, LiteralKind};
use crate::error::{Error, Result};
use crate::qu::StructuredRepresentation;
use crate::retrieval::{Evidence, Provenance, RankedEvidence, Retriever};
use crate::text;

/// Does the evidence contain one of the gold answers? Either a gold KB item
/// is among its mentions, the gold label occurs in the text on token
/// boundaries (case-insensitive), or a gold literal equals a literal
/// recognized in the text.
pub fn is_answering(evidence: &Evidence, golds: &[GoldAnswer]) -> bool {
    let mut text_literals = None;
    golds.iter().any(|g| {
        if let Some(item) = &g.kb_id {
            if evidence.mentions.iter().any(|m| &m.item == item) {
                return true;
            }
        }
        if text::contains_phrase(&evidence.text, &g.label) {
            return true;
        }
        match &g.kb_id {
            Some(item @ KbItem::Literal { kind, .. }) if *kind != LiteralKind::String => text_literals
                .get_or_insert_with(|| find_literals(&evidence.text))
                .iter()
                .any(|l| &KbItem::literal(l) == item),
            _ => false,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelevantMention {
    pub surface: String,
    pub source_turn: usize,
    pub entity: EntityId,
    /// Answering evidences this mention brought in (at least 1).
    pub evidence_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledTurn {
    pub turn: usize,
    pub gold_sr: StructuredRepresentation,
    pub relevant_mentions: Vec<RelevantMention>,
}

/// Most frequent type of an entity answer, or the literal kind; blank for
/// string literals and label-only answers.
pub fn gold_answer_type(gold: &GoldAnswer, corpus: &Corpus) -> String {
    match &gold.kb_id {
        Some(KbItem::Entity(id)) => match corpus.entity(id) {
            Some(e) => e.main_type().unwrap_or_default().to_string(),
            None => {
                log::warn!("gold answer {id} is not in the corpus; leaving the type blank");
                String::new()
            }
        },
        Some(KbItem::Literal { kind, .. }) if *kind != LiteralKind::String => kind.as_str().to_string(),
        _ => String::new(),
    }
}

/// Can `evidence` be reached by retrieving `entity`?
fn reachable_from(evidence: &Evidence, entity: &EntityId, corpus: &Corpus) -> bool {
    match &evidence.provenance {
        Provenance::Fact { fact_id } => corpus.fact(fact_id).is_some_and(|f| {
            &f.subject == entity
                || std::iter::once(&f.object)
                    .chain(f.qualifiers.iter().map(|(_, o)| o))
                    .any(|o| matches!(o, KbObject::Entity(e) if e == entity))
        }),
        Provenance::Sentence { page_id, .. }
        | Provenance::TableRow { page_id, .. }
        | Provenance::Infobox { page_id, .. } => corpus.page(page_id).is_some_and(|p| &p.entity == entity),
    }
}

struct SpanHit {
    surface: String,
    start: usize,
    entity: EntityId,
    count: usize,
}

/// For each lexicon span of `query` starting at or after token `from` (and
/// before `to`), the candidate entity bringing in the most answering
/// evidences among `ranked`. Spans without any are dropped.
fn answering_spans(
    query: &str,
    from: usize,
    to: usize,
    ranked: &[RankedEvidence],
    golds: &[GoldAnswer],
    corpus: &Corpus,
) -> Vec<SpanHit> {
    let answering: Vec<&Evidence> = ranked
        .iter()
        .map(|r| &r.evidence)
        .filter(|e| is_answering(e, golds))
        .collect();
    if answering.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for span in corpus.match_mentions(query) {
        if span.start < from || span.end > to {
            continue;
        }
        let mut best: Option<(usize, &EntityId)> = None;
        for cand in corpus.lexicon_lookup(&span.key) {
            let n = answering.iter().filter(|e| reachable_from(e, &cand.entity, corpus)).count();
            if n > 0 && best.is_none_or(|(b, _)| n > b) {
                best = Some((n, &cand.entity));
            }
        }
        if let Some((count, entity)) = best {
            out.push(SpanHit {
                surface: span.surface,
                start: span.start,
                entity: entity.clone(),
                count,
            });
        }
    }
    out
}

struct Candidate {
    surface: String,
    turn: usize,
}

/// Relevant mentions of turn `turn_index`, given the labels of all
/// earlier turns. Candidates from earlier turns are their relevant
/// mentions and gold answers, most recent turn first; each is appended to
/// the question on its own and kept if it brings in answering evidences.
pub fn relevant_mentions_for_turn(
    conversation: &Conversation,
    turn_index: usize,
    earlier: &[LabeledTurn],
    corpus: &Corpus,
    retriever: &dyn Retriever,
) -> Result<Vec<RelevantMention>> {
    let turn = conversation.turns.get(turn_index).ok_or_else(|| {
        Error::NotFound(format!("turn {turn_index} of conversation {}", conversation.conv_id))
    })?;
    if earlier.len() < turn_index {
        return Err(Error::InvalidInput(format!(
            "turn {turn_index} needs labels for all {turn_index} earlier turns, got {}",
            earlier.len()
        )));
    }
    let golds = &turn.gold_answers;
    let q_len = text::tokens(&turn.question).len();

    let base = retriever.retrieve(&turn.question)?;
    let current = answering_spans(&turn.question, 0, q_len, &base, golds, corpus);
    let to_mention = |h: &SpanHit, source_turn: usize| RelevantMention {
        surface: h.surface.clone(),
        source_turn,
        entity: h.entity.clone(),
        evidence_count: h.count,
    };
    if turn_index == 0 || !current.is_empty() {
        return Ok(current.iter().map(|h| to_mention(h, turn_index)).collect());
    }

    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for t in (0..turn_index).rev() {
        let labels = earlier[t].relevant_mentions.iter().map(|m| m.surface.as_str());
        let answers = conversation.turns[t].gold_answers.iter().map(|g| g.label.as_str());
        for surface in labels.chain(answers) {
            let key = text::normalize_key(surface);
            if !key.is_empty() && seen.insert(key) {
                candidates.push(Candidate {
                    surface: surface.to_string(),
                    turn: earlier[t].relevant_mentions.iter().find(|m| m.surface == surface).map_or(t, |m| m.source_turn),
                });
            }
        }
    }

    let mut prior = Vec::new();
    // current-question spans by start token, with their best count
    let mut current_best: Vec<SpanHit> = Vec::new();
    for cand in candidates {
        let query = format!("{} {}", turn.question, cand.surface);
        let ranked = retriever.retrieve(&query)?;
        let appended = answering_spans(&query, q_len, usize::MAX, &ranked, golds, corpus);
        if appended.is_empty() {
            continue;
        }
        let count = appended.iter().map(|h| h.count).max().unwrap_or(0);
        let entity = appended.iter().max_by_key(|h| h.count).map(|h| h.entity.clone()).unwrap();
        prior.push(RelevantMention {
            surface: cand.surface,
            source_turn: cand.turn,
            entity,
            evidence_count: count,
        });
        for h in answering_spans(&query, 0, q_len, &ranked, golds, corpus) {
            match current_best.iter_mut().find(|c| c.start == h.start) {
                Some(c) if c.count >= h.count => {}
                Some(c) => *c = h,
                None => current_best.push(h),
            }
        }
    }
    current_best.sort_by_key(|h| h.start);
    let mut out: Vec<RelevantMention> = current_best.iter().map(|h| to_mention(h, turn_index)).collect();
    out.extend(prior);
    Ok(out)
}

/// Builds the gold SR from relevant mentions: current-turn mentions are
/// question entities and earlier ones context, unless only earlier ones
/// exist, in which case they become the question entities. The predicate
/// is the remaining non-stopword question words; the type comes from the
/// first gold answer that has one.
fn gold_sr(question: &str, turn_index: usize, mentions: &[RelevantMention], golds: &[GoldAnswer], corpus: &Corpus) -> StructuredRepresentation {
    let (current, prior): (Vec<&RelevantMention>, Vec<&RelevantMention>) =
        mentions.iter().partition(|m| m.source_turn == turn_index);
    let surfaces = |v: &[&RelevantMention]| v.iter().map(|m| m.surface.clone()).collect::<Vec<_>>();
    let (context, qents) = if current.is_empty() {
        (Vec::new(), surfaces(&prior))
    } else {
        (surfaces(&prior), surfaces(&current))
    };

    let covered: Vec<(usize, usize)> = corpus
        .match_mentions(question)
        .into_iter()
        .filter(|s| current.iter().any(|m| m.surface == s.surface))
        .map(|s| (s.start, s.end))
        .collect();
    let predicate = text::tokens(question)
        .iter()
        .enumerate()
        .filter(|(i, t)| !corpus.is_stopword(&t.lower) && !covered.iter().any(|(s, e)| s <= i && i < e))
        .map(|(_, t)| t.lower.as_str())
        .collect::<Vec<_>>()
        .join(" ");
    let answer_type = golds
        .iter()
        .map(|g| gold_answer_type(g, corpus))
        .find(|t| !t.is_empty())
        .unwrap_or_default();
    StructuredRepresentation::new(context, qents, predicate, answer_type)
}

/// Labels every turn in order; each turn sees the labels of its
/// predecessors.
pub fn label_conversation(conversation: &Conversation, corpus: &Corpus, retriever: &dyn Retriever) -> Result<Vec<LabeledTurn>> {
    let mut labeled: Vec<LabeledTurn> = Vec::with_capacity(conversation.turns.len());
    for (i, turn) in conversation.turns.iter().enumerate() {
        let mentions = relevant_mentions_for_turn(conversation, i, &labeled, corpus, retriever)?;
        if mentions.is_empty() {
            log::warn!(
                "{} turn {i}: no mention brings in an answering evidence",
                conversation.conv_id
            );
        }
        labeled.push(LabeledTurn {
            turn: i,
            gold_sr: gold_sr(&turn.question, i, &mentions, &turn.gold_answers, corpus),
            relevant_mentions: mentions,
        });
    }
    Ok(labeled)
}

#[derive(Serialize)]
struct LabelRecord<'a> {
    conv_id: &'a str,
    turn: usize,
    sr: String,
    mentions: &'a [RelevantMention],
}

/// One `{conv_id, turn, sr, mentions}` object per line.
pub fn write_labels<W: Write>(mut out: W, conv_id: &str, turns: &[LabeledTurn]) -> std::io::Result<()> {
    for t in turns {
        let rec = LabelRecord {
            conv_id,
            turn: t.turn,
            sr: t.gold_sr.serialize(),
            mentions: &t.relevant_mentions,
        };
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
