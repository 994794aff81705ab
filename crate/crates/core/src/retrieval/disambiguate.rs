//! Lexicon-based entity disambiguation for retrieval queries.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::RetrieverConfig;
use crate::corpus::{Corpus, EntityId, KbObject};
use crate::text;

const LABEL_MATCH: f64 = 1.0;
const ALIAS_MATCH: f64 = 0.8;
const AUTO_K: usize = 5;
const AUTO_CUTOFF: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Disambiguation {
    /// Token range `[start, end)` in the query.
    pub span: (usize, usize),
    pub surface: String,
    pub entity: EntityId,
    pub score: f64,
}

/// Entities sharing a KB fact with `id`.
fn neighbours(corpus: &Corpus, id: &EntityId) -> HashSet<EntityId> {
    let mut out = HashSet::new();
    for f in corpus.facts_for_entity(id).unwrap_or_default() {
        out.insert(f.subject.clone());
        for obj in std::iter::once(&f.object).chain(f.qualifiers.iter().map(|(_, o)| o)) {
            if let KbObject::Entity(e) = obj {
                out.insert(e.clone());
            }
        }
    }
    out.remove(id);
    out
}

/// Longest-match alias spans of `query`; per span, candidates scored by
/// match quality (label 1.0, alias 0.8) times their share of the span's
/// prior mass. With several spans, that base score is averaged with a
/// coherence indicator: 1 when the candidate shares a KB fact with the
/// best base candidate of some other span. Candidates are kept best first
/// (ties by id); `k = None` keeps up to five scoring at least half the
/// best; at most `p` are returned overall.
pub fn disambiguate(query: &str, corpus: &Corpus, config: &RetrieverConfig) -> Vec<Disambiguation> {
    let spans = corpus.match_mentions(query);
    let mut per_span: Vec<Vec<(f64, &EntityId)>> = spans
        .iter()
        .map(|span| {
            let entries = corpus.lexicon_lookup(&span.key);
            let mass: u64 = entries.iter().map(|e| e.prior).sum::<u64>().max(1);
            entries
                .iter()
                .map(|e| {
                    let label_key = corpus.entity(&e.entity).map(|x| text::normalize_key(&x.label));
                    let quality = if label_key.as_deref() == Some(span.key.as_str()) {
                        LABEL_MATCH
                    } else {
                        ALIAS_MATCH
                    };
                    (quality * e.prior as f64 / mass as f64, &e.entity)
                })
                .collect()
        })
        .collect();
    for cands in &mut per_span {
        cands.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    }
    if spans.len() > 1 {
        let heads: Vec<Option<EntityId>> = per_span.iter().map(|c| c.first().map(|x| x.1.clone())).collect();
        for (i, cands) in per_span.iter_mut().enumerate() {
            for cand in cands.iter_mut() {
                let nb = neighbours(corpus, cand.1);
                let coherent = heads
                    .iter()
                    .enumerate()
                    .any(|(j, h)| j != i && h.as_ref().is_some_and(|h| nb.contains(h)));
                cand.0 = (cand.0 + if coherent { 1.0 } else { 0.0 }) / 2.0;
            }
            cands.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        }
    }

    let mut out = Vec::new();
    for (span, cands) in spans.iter().zip(per_span) {
        let keep = match config.k {
            Some(k) => k,
            None => {
                let best = cands.first().map_or(0.0, |c| c.0);
                cands
                    .iter()
                    .take(AUTO_K)
                    .take_while(|c| c.0 >= AUTO_CUTOFF * best)
                    .count()
            }
        };
        for (score, id) in cands.into_iter().take(keep) {
            if out.len() >= config.p {
                return out;
            }
            out.push(Disambiguation {
                span: (span.start, span.end),
                surface: span.surface.clone(),
                entity: id.clone(),
                score,
            });
        }
    }
    out
}
