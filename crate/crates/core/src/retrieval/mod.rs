//! Evidence retrieval and scoring: disambiguate query entities, collect
//! and verbalize their KB facts and page contents, rank with BM25.

mod bm25;
mod disambiguate;
mod verbalize;

use std::collections::HashSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

pub use bm25::{bm25_score, doc_tokens, query_tokens, Bm25Params, Bm25Stats};
pub use disambiguate::{disambiguate, Disambiguation};
pub use verbalize::{sentence_evidences, verbalize_fact, verbalize_infobox_entry, verbalize_table_row};

use crate::corpus::{Corpus, KbItem};
use crate::error::{Error, Result};
use crate::qu::StructuredRepresentation;
use crate::source::{Source, SourceMask};

#[cfg(test)]
pub(crate) use bm25::tests::reference_bm25;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvidenceMention {
    pub surface: String,
    pub item: KbItem,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Fact { fact_id: String },
    Sentence { page_id: String, index: usize },
    TableRow { page_id: String, table: usize, row: usize },
    Infobox { page_id: String, attribute: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub evidence_id: String,
    pub source: Source,
    pub text: String,
    pub mentions: Vec<EvidenceMention>,
    /// The disambiguation that pulled this evidence in (first one wins).
    pub anchor: Option<Disambiguation>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedEvidence {
    pub evidence: Evidence,
    pub bm25: f64,
    /// 1-based.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RetrieverConfig {
    /// Candidates kept per span; `None` selects them automatically.
    pub k: Option<usize>,
    /// Global cap on disambiguations.
    pub p: usize,
    /// Evidences kept after scoring.
    pub e: usize,
    pub bm25_k1: f64,
    pub bm25_b: f64,
    pub sources: SourceMask,
    /// Whether the answer-type slot joins the query.
    pub answer_type_in_query: bool,
}

impl Default for RetrieverConfig {
    fn default() -> Self {
        RetrieverConfig {
            k: None,
            p: 1000,
            e: 100,
            bm25_k1: 1.5,
            bm25_b: 0.75,
            sources: SourceMask::ALL,
            answer_type_in_query: true,
        }
    }
}

impl RetrieverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.e == 0 {
            return Err(Error::InvalidInput("e must be at least 1".into()));
        }
        if self.k == Some(0) {
            return Err(Error::InvalidInput("k must be at least 1 or auto".into()));
        }
        if self.p == 0 {
            return Err(Error::InvalidInput("p must be at least 1".into()));
        }
        Ok(())
    }

    pub fn bm25_params(&self) -> Bm25Params {
        Bm25Params {
            k1: self.bm25_k1,
            b: self.bm25_b,
        }
    }
}

/// Keyword query for an SR: slot contents without separators or blanks.
pub fn sr_query(sr: &StructuredRepresentation, config: &RetrieverConfig) -> String {
    sr.query_text(config.answer_type_in_query)
}

/// Evidences of every disambiguated entity in `query`: its KB facts and the
/// sentences, table rows and infobox entries of its page. Deduplicated by
/// evidence id, in disambiguation order.
pub fn retrieve_evidences(query: &str, corpus: &Corpus, config: &RetrieverConfig) -> Vec<Evidence> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for d in disambiguate(query, corpus, config) {
        let mut batch = Vec::new();
        if config.sources.contains(Source::Kb) {
            if let Ok(facts) = corpus.facts_for_entity(&d.entity) {
                batch.extend(facts.into_iter().map(|f| verbalize_fact(f, corpus)));
            }
        }
        if let Some(page) = corpus.page_of(&d.entity) {
            batch.extend(verbalize::page_evidences(page, corpus, config.sources));
        }
        for mut ev in batch {
            if seen.insert(ev.evidence_id.clone()) {
                ev.anchor = Some(d.clone());
                out.push(ev);
            }
        }
    }
    out
}

/// Scores the pool against `query` (statistics from the pool itself),
/// sorts by score then evidence id, keeps the best `config.e`.
pub fn top_e(query: &str, evidences: Vec<Evidence>, corpus: &Corpus, config: &RetrieverConfig) -> Vec<RankedEvidence> {
    let q = query_tokens(query, corpus.stopwords());
    let docs: Vec<Vec<String>> = evidences.iter().map(|e| doc_tokens(&e.text)).collect();
    let stats = Bm25Stats::from_docs(&docs);
    let params = config.bm25_params();
    let mut scored: Vec<(f64, Evidence)> = evidences
        .into_iter()
        .zip(&docs)
        .map(|(ev, d)| (bm25_score(&q, d, &stats, params), ev))
        .collect();
    scored.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then_with(|| a.1.evidence_id.cmp(&b.1.evidence_id))
    });
    scored
        .into_iter()
        .take(config.e)
        .enumerate()
        .map(|(i, (bm25, evidence))| RankedEvidence {
            evidence,
            bm25,
            rank: i + 1,
        })
        .collect()
}

/// Something that turns a keyword query into a ranked evidence list.
pub trait Retriever {
    fn retrieve(&self, query: &str) -> Result<Vec<RankedEvidence>>;
}

pub struct CorpusRetriever<'a> {
    pub corpus: &'a Corpus,
    pub config: RetrieverConfig,
}

impl<'a> CorpusRetriever<'a> {
    pub fn new(corpus: &'a Corpus, config: RetrieverConfig) -> Self {
        CorpusRetriever { corpus, config }
    }
}

impl Retriever for CorpusRetriever<'_> {
    fn retrieve(&self, query: &str) -> Result<Vec<RankedEvidence>> {
        let pool = retrieve_evidences(query, self.corpus, &self.config);
        Ok(top_e(query, pool, self.corpus, &self.config))
    }
}

/// One JSON object per line.
pub fn write_evidence_dump<W: Write>(mut out: W, ranked: &[RankedEvidence]) -> std::io::Result<()> {
    for r in ranked {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::mini_corpus;
    use proptest::prelude::*;

    fn got_sr() -> StructuredRepresentation {
        StructuredRepresentation::parse("GoT | the dwarf | who played | human").unwrap()
    }

    #[test]
    fn all_sources_for_got() {
        let c = mini_corpus();
        let cfg = RetrieverConfig::default();
        let evs = retrieve_evidences(&sr_query(&got_sr(), &cfg), &c, &cfg);
        let sources: HashSet<Source> = evs.iter().map(|e| e.source).collect();
        assert_eq!(sources.len(), 4);
        // 4 facts with GoT as subject, 3 sentences, 2 rows, 3 infobox entries
        assert_eq!(evs.len(), 4 + 3 + 2 + 3);
        let ids: HashSet<&str> = evs.iter().map(|e| e.evidence_id.as_str()).collect();
        assert_eq!(ids.len(), evs.len());
        assert!(evs.iter().all(|e| e.anchor.as_ref().unwrap().entity.as_str() == "Q1"));
    }

    #[test]
    fn source_mask_filters() {
        let c = mini_corpus();
        let cfg = RetrieverConfig {
            sources: SourceMask::only(Source::Kb),
            ..RetrieverConfig::default()
        };
        let evs = retrieve_evidences("GoT", &c, &cfg);
        assert_eq!(evs.len(), 4);
        assert!(evs.iter().all(|e| e.source == Source::Kb));
    }

    #[test]
    fn no_disambiguation_no_evidence() {
        let c = mini_corpus();
        assert!(retrieve_evidences("the dwarf who played", &c, &RetrieverConfig::default()).is_empty());
    }

    #[test]
    fn dedup_keeps_first_anchor() {
        let c = mini_corpus();
        let evs = retrieve_evidences("GoT Peter Dinklage", &c, &RetrieverConfig::default());
        let f2 = evs.iter().find(|e| e.evidence_id == "kb:F2").unwrap();
        assert_eq!(f2.anchor.as_ref().unwrap().entity.as_str(), "Q1");
        assert_eq!(evs.iter().filter(|e| e.evidence_id == "kb:F2").count(), 1);
    }

    #[test]
    fn ranking_and_truncation() {
        let c = mini_corpus();
        let cfg = RetrieverConfig::default();
        let q = "GoT first season release date";
        let ranked = top_e(q, retrieve_evidences(q, &c, &cfg), &c, &cfg);
        assert_eq!(ranked.len(), 12);
        // the shorter season row outranks the one with an episode count
        assert_eq!(ranked[0].evidence.evidence_id, "table:p-got:0:1");
        let pool = retrieve_evidences(q, &c, &cfg);
        let docs: Vec<Vec<String>> = pool.iter().map(|e| doc_tokens(&e.text)).collect();
        let qt = query_tokens(q, c.stopwords());
        let mut oracle: Vec<(f64, &str)> = (0..pool.len())
            .map(|d| (reference_bm25(&qt, &docs, d, 1.5, 0.75), pool[d].evidence_id.as_str()))
            .collect();
        oracle.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(b.1)));
        let got: Vec<&str> = ranked.iter().map(|r| r.evidence.evidence_id.as_str()).collect();
        let want: Vec<&str> = oracle.iter().map(|o| o.1).collect();
        assert_eq!(got, want);
        for w in ranked.windows(2) {
            assert!(w[0].bm25 >= w[1].bm25);
            assert_eq!(w[0].rank + 1, w[1].rank);
            if w[0].bm25 == w[1].bm25 {
                assert!(w[0].evidence.evidence_id < w[1].evidence.evidence_id);
            }
        }
        let small = RetrieverConfig { e: 3, ..cfg.clone() };
        let top3 = top_e(q, retrieve_evidences(q, &c, &small), &c, &small);
        assert_eq!(top3.len(), 3);
        assert_eq!(top3[..], ranked[..3]);
    }

    #[test]
    fn ties_broken_by_id() {
        let c = mini_corpus();
        let mk = |id: &str| Evidence {
            evidence_id: id.into(),
            source: Source::Text,
            text: "same text".into(),
            mentions: vec![],
            anchor: None,
            provenance: Provenance::Fact { fact_id: id.into() },
        };
        let ranked = top_e("text", vec![mk("b"), mk("a"), mk("c")], &c, &RetrieverConfig::default());
        let ids: Vec<_> = ranked.iter().map(|r| r.evidence.evidence_id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
    }

    #[test]
    fn evidence_dump_lines() {
        let c = mini_corpus();
        let cfg = RetrieverConfig::default();
        let ranked = CorpusRetriever::new(&c, cfg).retrieve("GoT running time").unwrap();
        let mut buf = Vec::new();
        write_evidence_dump(&mut buf, &ranked).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), ranked.len());
        let first: RankedEvidence = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first, ranked[0]);
    }

    #[test]
    fn config_validation() {
        assert!(RetrieverConfig::default().validate().is_ok());
        assert!(RetrieverConfig { e: 0, ..Default::default() }.validate().is_err());
        assert!(RetrieverConfig { k: Some(0), ..Default::default() }.validate().is_err());
    }

    proptest! {
        #[test]
        fn top_e_size_and_order(e in 1usize..20, words in prop::collection::vec("[a-d]{1,2}", 0..4)) {
            let c = mini_corpus();
            let cfg = RetrieverConfig { e, ..RetrieverConfig::default() };
            let q = format!("GoT Peter Dinklage {}", words.join(" "));
            let pool = retrieve_evidences(&q, &c, &cfg);
            let n = pool.len();
            let ranked = top_e(&q, pool, &c, &cfg);
            prop_assert_eq!(ranked.len(), e.min(n));
            for w in ranked.windows(2) {
                prop_assert!(w[0].bm25 >= w[1].bm25);
            }
        }
    }
}
