//! Answer normalization, P@1 and answer presence, breakdowns, and
//! significance tests.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};

use crate::answering::NO_ANSWER;
use crate::benchmark::{Conversation, Domain, GoldAnswer};
use crate::corpus::{normalize_literal, KbItem, LiteralKind};
use crate::error::{Error, Result};
use crate::retrieval::{Evidence, EvidenceMention, Provenance, RankedEvidence};
use crate::source::Source;
use crate::supervision::is_answering;

/// Unit-cost edit distance over chars.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationMethod {
    Exact,
    EditDistance,
    Literal,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedAnswer {
    pub kb_id: Option<KbItem>,
    pub matched_surface: Option<String>,
    pub method: NormalizationMethod,
}

impl NormalizedAnswer {
    fn none() -> Self {
        NormalizedAnswer {
            kb_id: None,
            matched_surface: None,
            method: NormalizationMethod::None,
        }
    }
}

/// Among (surface, item) pairs, the most frequent item, ties by key.
fn most_frequent<'a>(pairs: impl Iterator<Item = (&'a str, &'a KbItem)>, freq: &HashMap<&KbItem, usize>) -> Option<(&'a str, &'a KbItem)> {
    pairs.min_by(|a, b| {
        freq[b.1]
            .cmp(&freq[a.1])
            .then_with(|| a.1.key().cmp(&b.1.key()))
    })
}

/// Maps a raw answer to a KB item: dates, years and numbers directly;
/// otherwise a case-insensitive exact surface match among the retrieval
/// mentions, else the surface at the smallest edit distance (case-folded).
/// Ties prefer the item mentioned most often, then the smaller key.
pub fn normalize_answer(raw: &str, mentions: &[EvidenceMention]) -> NormalizedAnswer {
    let raw = raw.trim();
    if raw.is_empty() || raw == NO_ANSWER {
        return NormalizedAnswer::none();
    }
    let lit = normalize_literal(raw);
    if lit.kind != LiteralKind::String {
        return NormalizedAnswer {
            kb_id: Some(KbItem::literal(&lit)),
            matched_surface: None,
            method: NormalizationMethod::Literal,
        };
    }
    if mentions.is_empty() {
        return NormalizedAnswer::none();
    }
    let mut freq: HashMap<&KbItem, usize> = HashMap::new();
    for m in mentions {
        *freq.entry(&m.item).or_default() += 1;
    }
    let folded = raw.to_lowercase();
    let pairs = || mentions.iter().map(|m| (m.surface.as_str(), &m.item));
    let exact = most_frequent(pairs().filter(|(s, _)| s.to_lowercase() == folded), &freq);
    if let Some((surface, item)) = exact {
        return NormalizedAnswer {
            kb_id: Some(item.clone()),
            matched_surface: Some(surface.to_string()),
            method: NormalizationMethod::Exact,
        };
    }
    let dist: Vec<usize> = mentions.iter().map(|m| levenshtein(&folded, &m.surface.to_lowercase())).collect();
    let best = *dist.iter().min().expect("non-empty");
    let (surface, item) = most_frequent(
        pairs().zip(&dist).filter(|(_, d)| **d == best).map(|(p, _)| p),
        &freq,
    )
    .expect("non-empty");
    NormalizedAnswer {
        kb_id: Some(item.clone()),
        matched_surface: Some(surface.to_string()),
        method: NormalizationMethod::EditDistance,
    }
}

/// 1 when the normalized item is a gold item, or, for answers that could
/// not be normalized, when the raw text equals a gold label ignoring case.
pub fn p_at_1(raw: &str, normalized: &NormalizedAnswer, golds: &[GoldAnswer]) -> u8 {
    let hit = match (&normalized.kb_id, normalized.method) {
        (Some(id), _) => golds.iter().any(|g| g.kb_id.as_ref() == Some(id)),
        (None, NormalizationMethod::None) => {
            let raw = raw.trim().to_lowercase();
            golds.iter().any(|g| g.label.trim().to_lowercase() == raw)
        }
        (None, _) => false,
    };
    u8::from(hit)
}

pub fn answer_presence(ranked: &[RankedEvidence], golds: &[GoldAnswer]) -> u8 {
    u8::from(ranked.iter().any(|r| is_answering(&r.evidence, golds)))
}

/// Text and mentions of one top-e evidence, enough to recompute answer
/// presence and normalization offline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceDigest {
    pub evidence_id: String,
    pub source: Source,
    pub text: String,
    pub mentions: Vec<EvidenceMention>,
}

impl EvidenceDigest {
    pub fn from_ranked(r: &RankedEvidence) -> Self {
        EvidenceDigest {
            evidence_id: r.evidence.evidence_id.clone(),
            source: r.evidence.source,
            text: r.evidence.text.clone(),
            mentions: r.evidence.mentions.clone(),
        }
    }

    fn to_evidence(&self) -> Evidence {
        Evidence {
            evidence_id: self.evidence_id.clone(),
            source: self.source,
            text: self.text.clone(),
            mentions: self.mentions.clone(),
            anchor: None,
            provenance: Provenance::Fact {
                fact_id: self.evidence_id.clone(),
            },
        }
    }
}

/// One line of a run file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub conv_id: String,
    pub turn: usize,
    pub prediction_raw: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<NormalizedAnswer>,
    pub top_evidence_ids: Vec<String>,
    pub answer_presence_inputs: Vec<EvidenceDigest>,
}

impl RunRecord {
    pub fn mentions(&self) -> Vec<EvidenceMention> {
        self.answer_presence_inputs
            .iter()
            .flat_map(|d| d.mentions.iter().cloned())
            .collect()
    }

    /// Answer presence when only the first `e` evidences are kept.
    pub fn answer_presence_at(&self, e: usize, golds: &[GoldAnswer]) -> u8 {
        u8::from(
            self.answer_presence_inputs
                .iter()
                .take(e)
                .any(|d| is_answering(&d.to_evidence(), golds)),
        )
    }

    /// Answering evidences among the stored top-e.
    pub fn answering_count(&self, golds: &[GoldAnswer]) -> usize {
        self.answer_presence_inputs
            .iter()
            .filter(|d| is_answering(&d.to_evidence(), golds))
            .count()
    }
}

pub fn read_run(text: &str, path: &std::path::Path) -> Result<Vec<RunRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                column: e.column(),
                message: e.to_string(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionRecord {
    pub conv_id: String,
    pub turn: usize,
    pub p_at_1: u8,
    pub answer_presence: u8,
    pub domain: Domain,
    pub sources: Vec<Source>,
    pub prediction: String,
    pub normalized: NormalizedAnswer,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Means {
    pub n: usize,
    pub p_at_1: f64,
    pub answer_presence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub records: Vec<QuestionRecord>,
    pub p_at_1: f64,
    pub answer_presence: f64,
    pub by_turn: BTreeMap<String, Means>,
    pub by_domain: BTreeMap<String, Means>,
    pub by_source: BTreeMap<String, Means>,
}

/// Turn bucket label for a 0-based turn: "1" and "2-5" for five-turn
/// conversations; "1", "2-4", "5-7", "8-10" for longer ones.
pub fn turn_bucket(turn: usize, conversation_len: usize) -> &'static str {
    if conversation_len <= 5 {
        return if turn == 0 { "1" } else { "2-5" };
    }
    match turn {
        0 => "1",
        1..=3 => "2-4",
        4..=6 => "5-7",
        _ => "8-10",
    }
}

fn means<'a>(records: impl Iterator<Item = &'a QuestionRecord>) -> Means {
    let (mut n, mut p, mut a) = (0usize, 0usize, 0usize);
    for r in records {
        n += 1;
        p += r.p_at_1 as usize;
        a += r.answer_presence as usize;
    }
    let div = |x: usize| if n == 0 { 0.0 } else { x as f64 / n as f64 };
    Means {
        n,
        p_at_1: div(p),
        answer_presence: div(a),
    }
}

/// Scores every benchmark question from its run record. Missing or
/// unknown questions are an error listing them.
pub fn evaluate_run(run: &[RunRecord], benchmark: &[Conversation]) -> Result<MetricsReport> {
    let by_key: HashMap<(&str, usize), &RunRecord> =
        run.iter().map(|r| ((r.conv_id.as_str(), r.turn), r)).collect();
    let mut missing = Vec::new();
    let mut records = Vec::new();
    let mut turn_buckets: Vec<&'static str> = Vec::new();
    for conv in benchmark {
        for (i, turn) in conv.turns.iter().enumerate() {
            let Some(rec) = by_key.get(&(conv.conv_id.as_str(), i)) else {
                missing.push(format!("{}/{i}", conv.conv_id));
                continue;
            };
            let normalized = normalize_answer(&rec.prediction_raw, &rec.mentions());
            records.push(QuestionRecord {
                conv_id: conv.conv_id.clone(),
                turn: i,
                p_at_1: p_at_1(&rec.prediction_raw, &normalized, &turn.gold_answers),
                answer_presence: rec.answer_presence_at(usize::MAX, &turn.gold_answers),
                domain: conv.domain,
                sources: turn.sources_used.clone(),
                prediction: rec.prediction_raw.clone(),
                normalized,
            });
            turn_buckets.push(turn_bucket(i, conv.turns.len()));
        }
    }
    if !missing.is_empty() {
        return Err(Error::InvalidInput(format!(
            "run has no record for {} question(s): {}",
            missing.len(),
            missing.join(", ")
        )));
    }
    let known: std::collections::HashSet<(&str, usize)> = benchmark
        .iter()
        .flat_map(|c| (0..c.turns.len()).map(move |i| (c.conv_id.as_str(), i)))
        .collect();
    let extra: Vec<String> = run
        .iter()
        .filter(|r| !known.contains(&(r.conv_id.as_str(), r.turn)))
        .map(|r| format!("{}/{}", r.conv_id, r.turn))
        .collect();
    if !extra.is_empty() {
        return Err(Error::InvalidInput(format!("run records for unknown questions: {}", extra.join(", "))));
    }

    let mut by_turn: BTreeMap<String, Vec<&QuestionRecord>> = BTreeMap::new();
    let mut by_domain: BTreeMap<String, Vec<&QuestionRecord>> = BTreeMap::new();
    let mut by_source: BTreeMap<String, Vec<&QuestionRecord>> = BTreeMap::new();
    for (r, bucket) in records.iter().zip(&turn_buckets) {
        by_turn.entry(bucket.to_string()).or_default().push(r);
        by_domain.entry(r.domain.to_string()).or_default().push(r);
        for s in &r.sources {
            by_source.entry(s.to_string()).or_default().push(r);
        }
    }
    let collapse = |m: BTreeMap<String, Vec<&QuestionRecord>>| {
        m.into_iter()
            .map(|(k, v)| (k, means(v.into_iter())))
            .collect::<BTreeMap<_, _>>()
    };
    let overall = means(records.iter());
    Ok(MetricsReport {
        p_at_1: overall.p_at_1,
        answer_presence: overall.answer_presence,
        by_turn: collapse(by_turn),
        by_domain: collapse(by_domain),
        by_source: collapse(by_source),
        records,
    })
}

impl MetricsReport {
    /// Plain-text table: overall, then one block per breakdown.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let row = |out: &mut String, name: &str, n: usize, p: f64, a: f64| {
            let _ = writeln!(out, "{name:<14} {n:>6} {p:>8.3} {a:>8.3}");
        };
        let _ = writeln!(out, "{:<14} {:>6} {:>8} {:>8}", "", "n", "P@1", "AnsPres");
        row(&mut out, "All", self.records.len(), self.p_at_1, self.answer_presence);
        for (title, map) in [("turn", &self.by_turn), ("domain", &self.by_domain), ("source", &self.by_source)] {
            if map.is_empty() {
                continue;
            }
            let _ = writeln!(out, "-- by {title}");
            for (k, m) in map {
                row(&mut out, k, m.n, m.p_at_1, m.answer_presence);
            }
        }
        out
    }
}

/// Continuity-corrected McNemar test from the discordant counts: `b`
/// questions only A got right, `c` only B. Returns (statistic, p).
pub fn mcnemar_counts(b: usize, c: usize) -> (f64, f64) {
    if b + c == 0 {
        return (0.0, 1.0);
    }
    let diff = (b as f64 - c as f64).abs() - 1.0;
    let stat = diff.max(0.0).powi(2) / (b + c) as f64;
    let chi = ChiSquared::new(1.0).expect("valid dof");
    (stat, chi.sf(stat))
}

pub fn mcnemar(a: &[bool], b: &[bool]) -> Result<(f64, f64)> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "paired outcomes differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let only_a = a.iter().zip(b).filter(|(x, y)| **x && !**y).count();
    let only_b = a.iter().zip(b).filter(|(x, y)| !**x && **y).count();
    Ok(mcnemar_counts(only_a, only_b))
}

/// Paired two-sided t-test. Returns (t, p).
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "paired t-test needs two equal-length samples of at least 2, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len() as f64;
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    if var <= f64::EPSILON * mean.abs().max(1.0) * 1e-3 || var == 0.0 {
        return Err(Error::Undefined("paired differences have zero variance".into()));
    }
    let t = mean / (var / n).sqrt();
    let dist = StudentsT::new(0.0, 1.0, n - 1.0).expect("valid dof");
    Ok((t, 2.0 * dist.sf(t.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmark::Turn;
    use crate::corpus::EntityId;
    use proptest::prelude::*;

    /// Full-matrix DP, written independently of the two-row version.
    fn lev_oracle(a: &str, b: &str) -> usize {
        let a: Vec<char> = a.chars().collect();
        let b: Vec<char> = b.chars().collect();
        let mut m = vec![vec![0usize; b.len() + 1]; a.len() + 1];
        for (i, row) in m.iter_mut().enumerate() {
            row[0] = i;
        }
        for j in 0..=b.len() {
            m[0][j] = j;
        }
        for i in 1..=a.len() {
            for j in 1..=b.len() {
                let cost = if a[i - 1] == b[j - 1] { 0 } else { 1 };
                m[i][j] = *[m[i - 1][j] + 1, m[i][j - 1] + 1, m[i - 1][j - 1] + cost].iter().min().unwrap();
            }
        }
        m[a.len()][b.len()]
    }

    #[test]
    fn levenshtein_examples() {
        assert_eq!(levenshtein("a", "a"), 0);
        assert_eq!(levenshtein("abc", ""), 3);
        assert_eq!(levenshtein("", "abc"), 3);
        assert_eq!(levenshtein("kitten", "sitting"), 3);
        assert_eq!(levenshtein("50–82", "50-82"), 1);
    }

    proptest! {
        #[test]
        fn levenshtein_matches_oracle(a in "[a-c]{0,12}", b in "[a-c]{0,12}") {
            prop_assert_eq!(levenshtein(&a, &b), lev_oracle(&a, &b));
        }

        #[test]
        fn levenshtein_metric(a in "[a-cé]{0,12}", b in "[a-cé]{0,12}", c in "[a-cé]{0,12}") {
            prop_assert_eq!(levenshtein(&a, &b) == 0, a == b);
            prop_assert_eq!(levenshtein(&a, &b), levenshtein(&b, &a));
            prop_assert!(levenshtein(&a, &c) <= levenshtein(&a, &b) + levenshtein(&b, &c));
        }
    }

    fn m(surface: &str, id: &str) -> EvidenceMention {
        EvidenceMention {
            surface: surface.into(),
            item: KbItem::Entity(EntityId::new(id)),
        }
    }

    fn ent(id: &str) -> Option<KbItem> {
        Some(KbItem::Entity(EntityId::new(id)))
    }

    #[test]
    fn normalization_precedence() {
        let maps = vec![m("Tyrion", "Q5"), m("Peter Dinklage", "Q4")];
        let n = normalize_answer("tyrion", &maps);
        assert_eq!(n.method, NormalizationMethod::Exact);
        assert_eq!(n.kb_id, ent("Q5"));
        assert_eq!(n.matched_surface.as_deref(), Some("Tyrion"));

        let n = normalize_answer("11-06-1969", &maps);
        assert_eq!(n.method, NormalizationMethod::Literal);
        assert_eq!(n.kb_id, Some(KbItem::literal(&normalize_literal("11 June 1969"))));

        // distances from the DP oracle: "eddard stark" 5, "sansa stark" 4
        let maps = vec![m("Eddard Stark", "Qx"), m("Sansa Stark", "Qy")];
        assert_eq!(lev_oracle("ned stark", "eddard stark"), 5);
        assert_eq!(lev_oracle("ned stark", "sansa stark"), 4);
        let n = normalize_answer("Ned Stark", &maps);
        assert_eq!(n.method, NormalizationMethod::EditDistance);
        assert_eq!(n.kb_id, ent("Qy"));
        // an alias on the page makes it exact
        let maps = vec![m("Eddard Stark", "Qx"), m("Sansa Stark", "Qy"), m("Ned Stark", "Qx")];
        assert_eq!(normalize_answer("Ned Stark", &maps).kb_id, ent("Qx"));

        assert_eq!(normalize_answer("Ned Stark", &[]).method, NormalizationMethod::None);
        assert_eq!(normalize_answer(NO_ANSWER, &maps).method, NormalizationMethod::None);
    }

    #[test]
    fn normalization_ties() {
        // same distance: the item mentioned more often wins, then the key
        let maps = vec![m("abd", "Q2"), m("abe", "Q1"), m("abd", "Q2")];
        assert_eq!(normalize_answer("abc", &maps).kb_id, ent("Q2"));
        let maps = vec![m("abd", "Q2"), m("abe", "Q1")];
        assert_eq!(normalize_answer("abc", &maps).kb_id, ent("Q1"));
        // exact wins over a more frequent near miss
        let maps = vec![m("abd", "Q2"), m("abd", "Q2"), m("ABC", "Q3")];
        assert_eq!(normalize_answer("abc", &maps).kb_id, ent("Q3"));
    }

    #[test]
    fn precision_at_one() {
        let tyrion = GoldAnswer::entity("Tyrion Lannister", "Q5");
        let n = normalize_answer("Tyrion", &[m("Tyrion", "Q5")]);
        assert_eq!(p_at_1("Tyrion", &n, &[tyrion]), 1);

        let date = GoldAnswer::new("17 April 2011", None);
        let n = normalize_answer("2011", &[]);
        assert_eq!(n.kb_id, Some(KbItem::Literal { kind: LiteralKind::Year, value: "2011".into() }));
        assert_eq!(p_at_1("2011", &n, &[date.clone()]), 0);
        let n = normalize_answer("April 17, 2011", &[]);
        assert_eq!(p_at_1("April 17, 2011", &n, &[date]), 1);

        let fab = GoldAnswer {
            label: "Fab Four".into(),
            kb_id: None,
        };
        let n = normalize_answer("fab four", &[]);
        assert_eq!(p_at_1("fab four", &n, &[fab.clone()]), 1);
        assert_eq!(p_at_1("fab five", &normalize_answer("fab five", &[]), &[fab]), 0);
        // string gold literal matched through an exact mention
        let gold = GoldAnswer::new("Fab Four", None);
        let maps = vec![EvidenceMention {
            surface: "Fab Four".into(),
            item: KbItem::literal(&normalize_literal("Fab Four")),
        }];
        assert_eq!(p_at_1("Fab Four", &normalize_answer("Fab Four", &maps), &[gold]), 1);
    }

    fn digest(id: &str, text: &str, ms: Vec<EvidenceMention>) -> EvidenceDigest {
        EvidenceDigest {
            evidence_id: id.into(),
            source: Source::Kb,
            text: text.into(),
            mentions: ms,
        }
    }

    fn record(conv: &str, turn: usize, raw: &str, digests: Vec<EvidenceDigest>) -> RunRecord {
        RunRecord {
            conv_id: conv.into(),
            turn,
            prediction_raw: raw.into(),
            normalized: None,
            top_evidence_ids: digests.iter().map(|d| d.evidence_id.clone()).collect(),
            answer_presence_inputs: digests,
        }
    }

    fn toy_benchmark(n_conv: usize, turns: usize) -> Vec<Conversation> {
        (0..n_conv)
            .map(|c| Conversation {
                conv_id: format!("c{c}"),
                domain: Domain::ALL[c % 5],
                turns: (0..turns)
                    .map(|i| Turn {
                        index: i,
                        question: format!("q{i}"),
                        gold_answers: vec![GoldAnswer::entity("HBO", "Q6")],
                        completed_question: None,
                        paraphrase: None,
                        question_entities: vec![],
                        sources_used: vec![if i % 2 == 0 { Source::Kb } else { Source::Text }],
                    })
                    .collect(),
            })
            .collect()
    }

    #[test]
    fn answer_presence_truncation() {
        let golds = vec![GoldAnswer::entity("HBO", "Q6")];
        let mut ds: Vec<EvidenceDigest> = (0..39).map(|i| digest(&format!("e{i}"), "nothing", vec![])).collect();
        ds.push(digest("e39", "Game of Thrones, Network, HBO", vec![m("HBO", "Q6")]));
        let rec = record("c", 0, "HBO", ds);
        assert_eq!(rec.answer_presence_at(100, &golds), 1);
        assert_eq!(rec.answer_presence_at(40, &golds), 1);
        assert_eq!(rec.answer_presence_at(10, &golds), 0);
        assert_eq!(rec.answering_count(&golds), 1);
    }

    #[test]
    fn toy_runs() {
        let bench = toy_benchmark(2, 5);
        let hit = || vec![digest("e", "Game of Thrones, Network, HBO", vec![m("HBO", "Q6")])];
        let all: Vec<RunRecord> = bench
            .iter()
            .flat_map(|c| (0..5).map(move |t| (c.conv_id.clone(), t)))
            .map(|(c, t)| record(&c, t, "HBO", hit()))
            .collect();
        let rep = evaluate_run(&all, &bench).unwrap();
        assert_eq!(rep.records.len(), 10);
        assert_eq!(rep.p_at_1, 1.0);

        let half: Vec<RunRecord> = all
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                if i % 2 == 1 {
                    r.prediction_raw = NO_ANSWER.into();
                }
                r
            })
            .collect();
        let rep = evaluate_run(&half, &bench).unwrap();
        assert_eq!(rep.p_at_1, 0.5);
        assert_eq!(rep.answer_presence, 1.0);
        assert_eq!(rep.by_turn["1"].n, 2);
        assert_eq!(rep.by_turn["2-5"].n, 8);
        assert!(rep.to_table().contains("All"));

        let err = evaluate_run(&all[1..], &bench).unwrap_err();
        assert!(err.to_string().contains("c0/0"), "{err}");
    }

    #[test]
    fn ten_turn_buckets() {
        let labels: Vec<&str> = (0..10).map(|t| turn_bucket(t, 10)).collect();
        assert_eq!(labels, ["1", "2-4", "2-4", "2-4", "5-7", "5-7", "5-7", "8-10", "8-10", "8-10"]);
        assert_eq!(turn_bucket(4, 5), "2-5");
    }

    #[test]
    fn run_file_round_trip() {
        let rec = record("c0", 3, "HBO", vec![digest("kb:F3", "GoT, network, HBO", vec![m("HBO", "Q6")])]);
        let line = serde_json::to_string(&rec).unwrap();
        let back = read_run(&format!("{line}\n\n"), std::path::Path::new("run.jsonl")).unwrap();
        assert_eq!(back, [rec]);
        let err = read_run("{", std::path::Path::new("run.jsonl")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn mcnemar_values() {
        let (s, p) = mcnemar_counts(10, 2);
        assert!((s - 49.0 / 12.0).abs() < 1e-12);
        assert!(p > 0.04 && p < 0.05, "{p}");
        let (s, _) = mcnemar_counts(5, 5);
        assert_eq!(s, 0.0);
        assert_eq!(mcnemar_counts(0, 0), (0.0, 1.0));
        let a = [true, true, false, false];
        let b = [true, false, true, true];
        assert_eq!(mcnemar(&a, &b).unwrap(), mcnemar_counts(1, 2));
        assert!(mcnemar(&a, &b[..3]).is_err());
    }

    #[test]
    fn t_test_degenerate() {
        let v = [0.3, 0.5, 0.9];
        assert!(matches!(paired_t_test(&v, &v), Err(Error::Undefined(_))));
        let a = [0.2, 0.3, 0.4, 0.5, 0.6];
        let b: Vec<f64> = a.iter().map(|x| x - 0.1).collect();
        assert!(matches!(paired_t_test(&a, &b), Err(Error::Undefined(_))));
        assert!(paired_t_test(&[1.0], &[0.0]).is_err());
    }

    #[test]
    fn t_test_known_value() {
        // d = [1, 2, 3]: mean 2, sd 1, t = 2 / (1/sqrt 3) = 2*sqrt 3, df 2
        let (t, p) = paired_t_test(&[2.0, 4.0, 6.0], &[1.0, 2.0, 3.0]).unwrap();
        assert!((t - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        // two-sided p for t=3.4641 with 2 df: 1 - t/sqrt(t^2+2)
        let closed = 1.0 - t / (t * t + 2.0).sqrt();
        assert!((p - closed).abs() < 1e-9, "{p} vs {closed}");
    }
}
