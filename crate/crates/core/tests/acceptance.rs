//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hetconv_core::answering::{prepare_training_set, TrainingRun};
use hetconv_core::benchmark::{load_convmix, Conversation, Domain, GoldAnswer, Turn};
use hetconv_core::corpus::Corpus;
use hetconv_core::evaluation::{evaluate_run, levenshtein, mcnemar_counts, paired_t_test, MetricsReport};
use hetconv_core::pipeline::{Pipeline, PipelineConfig, RunOutput};
use hetconv_core::qu::{build_cfg, AblationMask, ConversationHistory, QuStrategy, StructuredRepresentation};
use hetconv_core::retrieval::{bm25_score, Bm25Params, Bm25Stats};
use hetconv_core::retrieval::{sentence_evidences, verbalize_fact, verbalize_infobox_entry, verbalize_table_row};
use hetconv_core::retrieval::{Evidence, RetrieverConfig};
use hetconv_core::text;

/// Pinned after the first oracle run of the heuristic pipeline on got-mini.
const HEURISTIC_P_AT_1_THRESHOLD: f64 = 0.65;
/// Gold-SR answer presence with the question-entity slot ablated.
const ABLATED_QENT_PRESENCE: f64 = 0.03;

type Outcome = Result<String, String>;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/got-mini")
}

struct Fixture {
    corpus: Corpus,
    benchmark: Vec<Conversation>,
}

impl Fixture {
    fn load() -> Fixture {
        let dir = fixture_dir();
        Fixture {
            corpus: Corpus::load_snapshot(&dir).expect("got-mini corpus"),
            benchmark: load_convmix(dir.join("benchmark.json")).expect("got-mini benchmark"),
        }
    }

    fn run(&self, qu: QuStrategy, ablate: AblationMask, e: usize) -> (RunOutput, MetricsReport) {
        let config = PipelineConfig {
            qu,
            ablate,
            retriever: RetrieverConfig { e, ..Default::default() },
            ..Default::default()
        };
        let pipeline = Pipeline::new(&self.corpus, config).expect("valid config");
        let out = pipeline.run(&self.benchmark).expect("pipeline run");
        let report = evaluate_run(&out.records, &self.benchmark).expect("complete run");
        (out, report)
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `(...)` in the expected string stands for an elided stretch.
fn matches_elided(actual: &str, expected: &str) -> bool {
    let pieces: Vec<&str> = expected.split("(...)").map(str::trim_end).collect();
    if pieces.len() == 1 {
        return actual == expected;
    }
    let mut rest = actual;
    for (i, piece) in pieces.iter().enumerate() {
        let Some(pos) = rest.find(piece) else { return false };
        if i == 0 && pos != 0 {
            return false;
        }
        rest = &rest[pos + piece.len()..];
    }
    pieces.last().is_some_and(|p| actual.ends_with(p))
}

fn criterion_1(fx: &Fixture) -> Outcome {
    let start = Instant::now();
    let corpus = &fx.corpus;
    let page = corpus.page("p-game-of-thrones").ok_or("no Game of Thrones page")?;
    let fact = corpus.fact("F1").ok_or("no fact F1")?;
    let kb = verbalize_fact(fact, corpus).text;
    let sentences = sentence_evidences(page, corpus);
    let row = verbalize_table_row(page, 0, 0, corpus).map_err(|e| e.to_string())?.text;
    let info = verbalize_infobox_entry(page, "Running time", corpus).map_err(|e| e.to_string())?.text;
    let elapsed = start.elapsed();

    check(
        kb == "Game of Thrones, cast member, Nikolaj Coster-Waldau, character role, Jaime Lannister",
        || format!("KB: {kb:?}"),
    )?;
    let expected_text = "Game of Thrones, The third and youngest Lannister sibling is the dwarf Tyrion (Peter Dinklage) (...).";
    check(sentences.iter().any(|s| matches_elided(&s.text, expected_text)), || {
        format!("Text: no sentence matches, got {:?}", sentences.iter().map(|s| &s.text).collect::<Vec<_>>())
    })?;
    check(
        matches_elided(&row, "Game of Thrones, Season is Season 1, (...), First aired is April 17, 2011 (...)."),
        || format!("Table: {row:?}"),
    )?;
    check(info == "Game of Thrones, Running time, 50–82 minutes", || format!("Infobox: {info:?}"))?;
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("4/4 strings, {elapsed:?}"))
}

fn oracle_bm25(query: &[String], docs: &[Vec<String>], k1: f64, b: f64) -> Vec<f64> {
    let n = docs.len() as f64;
    let avgdl = docs.iter().map(Vec::len).sum::<usize>() as f64 / n;
    docs.iter()
        .map(|d| {
            let mut s = 0.0;
            for q in query {
                let df = docs.iter().filter(|x| x.contains(q)).count() as f64;
                let idf = (1.0 + (n - df + 0.5) / (df + 0.5)).ln();
                let f = d.iter().filter(|t| *t == q).count() as f64;
                s += idf * (f * (k1 + 1.0)) / (f + k1 * (1.0 - b + b * d.len() as f64 / avgdl));
            }
            s
        })
        .collect()
}

fn ranking(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    idx
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let params = Bm25Params::default();
    let mut max_diff = 0.0f64;
    for case in 0..100 {
        let vocab = rng.gen_range(1..=10);
        let n_docs = rng.gen_range(1..=20);
        let docs: Vec<Vec<String>> = (0..n_docs)
            .map(|_| (0..rng.gen_range(1..15)).map(|_| format!("t{}", rng.gen_range(0..vocab))).collect())
            .collect();
        // one id past the vocabulary: a term no document contains
        let query: Vec<String> = (0..rng.gen_range(1..6)).map(|_| format!("t{}", rng.gen_range(0..=vocab))).collect();
        let stats = Bm25Stats::from_docs(&docs);
        let ours: Vec<f64> = docs.iter().map(|d| bm25_score(&query, d, &stats, params)).collect();
        let oracle = oracle_bm25(&query, &docs, params.k1, params.b);
        for (a, o) in ours.iter().zip(&oracle) {
            max_diff = max_diff.max((a - o).abs());
        }
        check(max_diff <= 1e-9, || format!("case {case}: score differs by {max_diff:e}"))?;
        check(ranking(&ours) == ranking(&oracle), || format!("case {case}: rankings differ"))?;
    }
    Ok(format!("100 corpora, max |diff| {max_diff:e}"))
}

fn lev_oracle(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut m = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 0..=a.len() {
        for j in 0..=b.len() {
            m[i][j] = if i == 0 {
                j
            } else if j == 0 {
                i
            } else {
                let sub = m[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
                sub.min(m[i - 1][j] + 1).min(m[i][j - 1] + 1)
            };
        }
    }
    m[a.len()][b.len()]
}

fn run_property<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn criterion_3() -> Outcome {
    check(levenshtein("kitten", "sitting") == 3, || "kitten/sitting != 3".into())?;
    let s = || "[a-dé]{0,12}";
    run_property(1000, (s(), s(), s()), |(a, b, c)| {
        let ab = levenshtein(&a, &b);
        prop_assert_eq!(ab, lev_oracle(&a, &b));
        prop_assert_eq!(levenshtein(&a, &a), 0);
        prop_assert_eq!(ab == 0, a == b);
        prop_assert_eq!(ab, levenshtein(&b, &a));
        prop_assert!(levenshtein(&a, &c) <= ab + levenshtein(&b, &c));
        Ok(())
    })?;
    Ok("1000 triples, kitten/sitting = 3".into())
}

fn arb_word() -> impl Strategy<Value = String> {
    "[A-Za-z0-9é'-]{1,7}".prop_filter("joiner word", |w| w != "and" && w != "_")
}

fn arb_phrase() -> impl Strategy<Value = String> {
    prop::collection::vec(arb_word(), 1..4).prop_map(|w| w.join(" "))
}

fn arb_sr() -> impl Strategy<Value = StructuredRepresentation> {
    (
        prop::collection::vec(arb_phrase(), 0..3),
        prop::collection::vec(arb_phrase(), 0..3),
        prop::option::of(arb_phrase()),
        prop::option::of(arb_word()),
    )
        .prop_map(|(c, q, p, t)| StructuredRepresentation::new(c, q, p.unwrap_or_default(), t.unwrap_or_default()))
}

fn criterion_4() -> Outcome {
    run_property(1000, arb_sr(), |sr| {
        let parsed = StructuredRepresentation::parse(&sr.serialize());
        prop_assert_eq!(parsed, Ok(sr));
        Ok(())
    })?;
    let first = StructuredRepresentation::parse("GoT | the dwarf | who played | human").map_err(|e| e.to_string())?;
    check(
        first == StructuredRepresentation::new(vec!["GoT".into()], vec!["the dwarf".into()], "who played", "human"),
        || format!("running-example SR parsed to {first:?}"),
    )?;
    let second = StructuredRepresentation::parse("_ | GoT | duration of an episode | number").map_err(|e| e.to_string())?;
    check(
        second == StructuredRepresentation::new(vec![], vec!["GoT".into()], "duration of an episode", "number"),
        || format!("episode-duration SR parsed to {second:?}"),
    )?;
    Ok("1000 SRs round-trip, 2 reference SRs".into())
}

fn arb_history() -> impl Strategy<Value = ConversationHistory> {
    let phrase = "[a-f]{1,2}( [a-f]{1,2}){0,4}";
    prop::collection::vec((phrase, prop::collection::vec(phrase, 0..3)), 0..8).prop_map(|turns| {
        let mut h = ConversationHistory::new();
        for (q, a) in turns {
            h.push(q, a);
        }
        h
    })
}

fn arb_lower_sr() -> impl Strategy<Value = StructuredRepresentation> {
    let phrase = || "[a-f]{1,2}( [a-f]{1,2}){0,2}";
    (
        prop::collection::vec(phrase(), 0..3),
        prop::collection::vec(phrase(), 0..3),
        prop::option::of(phrase()),
        prop::option::of("[a-f]{1,2}"),
    )
        .prop_map(|(c, q, p, t)| StructuredRepresentation::new(c, q, p.unwrap_or_default(), t.unwrap_or_default()))
}

fn criterion_5() -> Outcome {
    let stopwords = text::default_stopwords();
    let self_sufficient = std::cell::Cell::new(0usize);
    run_property(500, (arb_history(), arb_lower_sr(), "[a-f ]{0,14}"), |(history, sr, question)| {
        let g = build_cfg(&sr, &history, &question, stopwords);
        for e in &g.edges {
            prop_assert_eq!(e.from_turn, history.len());
            prop_assert!(e.to_turn < e.from_turn, "edge {} -> {}", e.from_turn, e.to_turn);
        }
        // Independent recount: SR words outside the question that occur in
        // any earlier question or answer.
        let q_words: HashSet<&str> = question.split_whitespace().collect();
        let sr_text = [sr.context_entities.join(" "), sr.question_entities.join(" "), sr.predicate.clone(), sr.answer_type.clone()].join(" ");
        let history_words: HashSet<&str> = history
            .turns
            .iter()
            .flat_map(|t| t.question.split_whitespace().chain(t.answers.iter().flat_map(|a| a.split_whitespace())))
            .collect();
        let matched = sr_text
            .split_whitespace()
            .any(|w| !stopwords.contains(w) && !q_words.contains(w) && history_words.contains(w));
        prop_assert_eq!(g.self_sufficient, !matched);
        if g.self_sufficient {
            self_sufficient.set(self_sufficient.get() + 1);
        }
        Ok(())
    })?;
    Ok(format!("500 cases, {} self-sufficient", self_sufficient.get()))
}

struct Planted {
    domain: Domain,
    planted: &'static str,
    turns: [(&'static str, &'static str); 5],
}

fn planted_conversations() -> Vec<Planted> {
    vec![
        Planted {
            domain: Domain::TvSeries,
            planted: "GoT",
            turns: [
                ("Who created GoT?", "David Benioff"),
                ("Who played the dwarf?", "Peter Dinklage"),
                ("Which network aired it?", "HBO"),
                ("How many seasons are there?", "8"),
                ("Which book series is it based on?", "A Song of Ice and Fire"),
            ],
        },
        Planted {
            domain: Domain::TvSeries,
            planted: "Breaking Bad",
            turns: [
                ("Who created Breaking Bad?", "Vince Gilligan"),
                ("Who played Heisenberg?", "Bryan Cranston"),
                ("Which network aired it?", "AMC"),
                ("In which city is it set?", "Albuquerque"),
                ("How many seasons were made?", "5"),
            ],
        },
        Planted {
            domain: Domain::Books,
            planted: "The Hobbit",
            turns: [
                ("Who wrote The Hobbit?", "J. R. R. Tolkien"),
                ("What role does the wizard play in the story?", "mentor"),
                ("When was it published?", "21 September 1937"),
                ("Who published it?", "George Allen & Unwin"),
                ("What is the sequel?", "The Lord of the Rings"),
            ],
        },
        Planted {
            domain: Domain::Books,
            planted: "Pride and Prejudice",
            turns: [
                ("Who wrote Pride and Prejudice?", "Jane Austen"),
                ("Whom does Darcy marry?", "Elizabeth Bennet"),
                ("When was it published?", "28 January 1813"),
                ("Who published it?", "Thomas Egerton"),
                ("In which county is it set?", "Hertfordshire"),
            ],
        },
        Planted {
            domain: Domain::Movies,
            planted: "Inception",
            turns: [
                ("Who directed Inception?", "Christopher Nolan"),
                ("Who played Cobb?", "Leonardo DiCaprio"),
                ("Who composed the music?", "Hans Zimmer"),
                ("When was it released?", "16 July 2010"),
                ("Which company distributed it?", "Warner Bros."),
            ],
        },
        Planted {
            domain: Domain::Movies,
            planted: "The Godfather",
            turns: [
                ("Who directed The Godfather?", "Francis Ford Coppola"),
                ("Who played Michael?", "Al Pacino"),
                ("When was it released?", "24 March 1972"),
                ("Which award did it win?", "Academy Award for Best Picture"),
                ("What is the sequel?", "The Godfather Part II"),
            ],
        },
        Planted {
            domain: Domain::Music,
            planted: "Thriller",
            turns: [
                ("Who recorded the album Thriller?", "Michael Jackson"),
                ("What was the role of Quincy on the album?", "producer"),
                ("When was it released?", "30 November 1982"),
                ("Which label released it?", "Epic Records"),
                ("What genre is it?", "pop music"),
            ],
        },
        Planted {
            domain: Domain::Music,
            planted: "Abbey Road",
            turns: [
                ("Which band recorded Abbey Road?", "The Beatles"),
                ("What was the role of Martin on the album?", "producer"),
                ("When was it released?", "26 September 1969"),
                ("Which label released it?", "Apple Records"),
                ("Where was it recorded?", "Abbey Road Studios"),
            ],
        },
        Planted {
            domain: Domain::Soccer,
            planted: "FC Barcelona",
            turns: [
                ("Which stadium does FC Barcelona play in?", "Camp Nou"),
                ("When did Joan found the club?", "29 November 1899"),
                ("In which league does it play?", "La Liga"),
                ("In which city is it based?", "Barcelona"),
                ("When was it founded?", "29 November 1899"),
            ],
        },
        Planted {
            domain: Domain::Soccer,
            planted: "2014 FIFA World Cup",
            turns: [
                ("Which country hosted the 2014 FIFA World Cup?", "Brazil"),
                ("How many goals did James score?", "6"),
                ("Which team won it?", "Germany national football team"),
                ("Where was the final played?", "Maracanã Stadium"),
                ("When did it begin?", "12 June 2014"),
            ],
        },
    ]
}

fn gold(corpus: &Corpus, label: &str) -> GoldAnswer {
    match corpus.entities().find(|e| e.label == label) {
        Some(e) => GoldAnswer::entity(label, e.id.as_str()),
        None => GoldAnswer::new(label, None),
    }
}

fn criterion_6(fx: &Fixture) -> Outcome {
    let pipeline = Pipeline::new(&fx.corpus, PipelineConfig::default()).map_err(|e| e.to_string())?;
    let mut correct = 0;
    let mut problems = Vec::new();
    let specs = planted_conversations();
    for (ci, spec) in specs.iter().enumerate() {
        let conv = Conversation {
            conv_id: format!("planted-{ci}"),
            domain: spec.domain,
            turns: spec
                .turns
                .iter()
                .enumerate()
                .map(|(i, (q, a))| Turn {
                    index: i,
                    question: q.to_string(),
                    gold_answers: vec![gold(&fx.corpus, a)],
                    completed_question: None,
                    paraphrase: None,
                    question_entities: Vec::new(),
                    sources_used: Vec::new(),
                })
                .collect(),
        };
        let labels = pipeline.label(&conv).map_err(|e| e.to_string())?;
        let mut ok = true;
        for (i, l) in labels.iter().enumerate() {
            let sr = &l.gold_sr;
            let has = |v: &[String]| v.iter().any(|m| m == spec.planted);
            let placed = match i {
                0 => has(&sr.question_entities),
                1 => has(&sr.context_entities) && !sr.question_entities.is_empty(),
                _ => has(&sr.question_entities),
            };
            if !placed {
                ok = false;
                problems.push(format!("{} turn {i}: {}", spec.planted, sr.serialize()));
            }
            if let Some(m) = l.relevant_mentions.iter().find(|m| m.evidence_count == 0) {
                ok = false;
                problems.push(format!("{} turn {i}: {} has no answering evidence", spec.planted, m.surface));
            }
        }
        correct += usize::from(ok);
    }
    check(correct == specs.len(), || format!("{correct}/{} correct; {}", specs.len(), problems.join("; ")))?;
    Ok(format!("{correct}/{} conversations", specs.len()))
}

struct Runs {
    gold: (RunOutput, MetricsReport),
    heuristic: (RunOutput, MetricsReport),
    ablated: (RunOutput, MetricsReport),
    prepend: (RunOutput, MetricsReport),
    elapsed: Duration,
}

fn criterion_7(runs: &Runs) -> Outcome {
    let gold = runs.gold.1.answer_presence;
    let heur = runs.heuristic.1.p_at_1;
    check(gold == 1.0, || format!("gold-SR answer presence {gold}"))?;
    check(heur >= HEURISTIC_P_AT_1_THRESHOLD, || format!("heuristic P@1 {heur} < {HEURISTIC_P_AT_1_THRESHOLD}"))?;
    check(runs.elapsed < Duration::from_secs(60), || format!("took {:?}", runs.elapsed))?;
    Ok(format!(
        "gold-SR presence {gold}, heuristic P@1 {heur:.3} >= {HEURISTIC_P_AT_1_THRESHOLD}, {:?}",
        runs.elapsed
    ))
}

fn criterion_8(fx: &Fixture, runs: &Runs) -> Outcome {
    let all = [("gold", &runs.gold), ("heuristic", &runs.heuristic), ("ablated", &runs.ablated), ("prepend", &runs.prepend)];
    for (name, (out, report)) in all {
        check(report.p_at_1 <= report.answer_presence, || format!("{name}: P@1 above presence"))?;
        let n = report.records.len();
        let p_sum: u32 = report.records.iter().map(|r| u32::from(r.p_at_1)).sum();
        let a_sum: u32 = report.records.iter().map(|r| u32::from(r.answer_presence)).sum();
        check(report.p_at_1 == p_sum as f64 / n as f64, || format!("{name}: P@1 micro-average"))?;
        check(report.answer_presence == a_sum as f64 / n as f64, || format!("{name}: presence micro-average"))?;
        for (rec, q) in out.records.iter().zip(&report.records) {
            check(q.p_at_1 <= q.answer_presence, || format!("{name} {}/{}: P@1 above presence", rec.conv_id, rec.turn))?;
            let golds = &fx
                .benchmark
                .iter()
                .find(|c| c.conv_id == rec.conv_id)
                .ok_or("unknown conversation")?
                .turns[rec.turn]
                .gold_answers;
            let at: Vec<u8> = [1, 5, 10, 50, 100].iter().map(|&e| rec.answer_presence_at(e, golds)).collect();
            check(at.windows(2).all(|w| w[0] <= w[1]), || format!("{name} {}/{}: presence {at:?}", rec.conv_id, rec.turn))?;
        }
    }
    Ok("4 runs: P@1 <= presence, presence monotone in e, micro = mean".into())
}

fn criterion_9() -> Outcome {
    let (stat, _) = mcnemar_counts(10, 2);
    check((stat - 49.0 / 12.0).abs() <= 1e-6, || format!("McNemar statistic {stat}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..200 {
        let n = rng.gen_range(2..40);
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let d: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        let nf = n as f64;
        let s1: f64 = d.iter().sum();
        let s2: f64 = d.iter().map(|x| x * x).sum();
        let sd = ((s2 - s1 * s1 / nf) / (nf - 1.0)).sqrt();
        let t_oracle = s1 / nf / (sd / nf.sqrt());
        let df = nf - 1.0;
        let p_oracle = statrs::function::beta::beta_reg(df / 2.0, 0.5, df / (df + t_oracle * t_oracle));
        let (t, p) = paired_t_test(&a, &b).map_err(|e| e.to_string())?;
        check((t - t_oracle).abs() <= 1e-9 * t_oracle.abs().max(1.0), || format!("case {case}: t {t} vs {t_oracle}"))?;
        check((p - p_oracle).abs() <= 1e-9, || format!("case {case}: p {p} vs {p_oracle}"))?;
    }
    Ok(format!("statistic {stat:.6}, 200 paired-t cases"))
}

fn phrase_in(haystack: &str, needle: &str) -> bool {
    let h = haystack.to_lowercase();
    let n = needle.trim().to_lowercase();
    if n.is_empty() {
        return false;
    }
    h.match_indices(&n).any(|(i, _)| {
        let before = h[..i].chars().next_back();
        let after = h[i + n.len()..].chars().next();
        !before.is_some_and(char::is_alphanumeric) && !after.is_some_and(char::is_alphanumeric)
    })
}

fn answers(ev: &Evidence, golds: &[GoldAnswer]) -> bool {
    golds.iter().any(|g| {
        let by_item = g
            .kb_id
            .as_ref()
            .is_some_and(|item| ev.mentions.iter().any(|m| &m.item == item));
        by_item || phrase_in(&ev.text, &g.label)
    })
}

fn criterion_10(fx: &Fixture) -> Outcome {
    let mut total = 0;
    let mut kept_total = 0;
    for e in [1, 2, 3] {
        for qu in [QuStrategy::GoldSr, QuStrategy::HeuristicSr, QuStrategy::PrependAll] {
            let (out, _) = fx.run(qu, AblationMask::default(), e);
            let mut runs = Vec::new();
            let mut expected = BTreeSet::new();
            for conv in &fx.benchmark {
                for (i, t) in out.outputs[&conv.conv_id].iter().enumerate() {
                    let key = format!("{}/{i}", conv.conv_id);
                    let golds = conv.turns[i].gold_answers.clone();
                    if t.ranked.iter().any(|r| answers(&r.evidence, &golds)) {
                        expected.insert(key.clone());
                    }
                    runs.push(TrainingRun {
                        sr_text: key,
                        ranked: t.ranked.clone(),
                        golds,
                    });
                }
            }
            let set = prepare_training_set(&runs);
            let kept: BTreeSet<String> = set.instances.iter().map(|i| i.sr_text.clone()).collect();
            check(kept == expected, || {
                format!(
                    "{qu:?} e={e}: only kept {:?}, only recounted {:?}",
                    kept.difference(&expected).collect::<Vec<_>>(),
                    expected.difference(&kept).collect::<Vec<_>>()
                )
            })?;
            check(set.dropped + kept.len() == runs.len(), || format!("{qu:?} e={e}: dropped count"))?;
            total += runs.len();
            kept_total += kept.len();
        }
    }
    Ok(format!("{kept_total}/{total} kept across 9 runs, sets equal"))
}

fn criterion_11(runs: &Runs) -> Outcome {
    let full = runs.gold.1.answer_presence;
    let ablated = runs.ablated.1.answer_presence;
    check(ablated < full, || format!("presence {ablated} not below unablated {full}"))?;
    check((ablated - ABLATED_QENT_PRESENCE).abs() < 1e-12, || {
        format!("presence {ablated}, pinned {ABLATED_QENT_PRESENCE}")
    })?;
    Ok(format!("presence {full} -> {ablated}"))
}

fn main() {
    let fx = Fixture::load();
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "verbalization", criterion_1(&fx)),
        (2, "BM25 oracle", criterion_2()),
        (3, "Levenshtein", criterion_3()),
        (4, "SR round-trip", criterion_4()),
        (5, "CFG soundness", criterion_5()),
        (6, "distant supervision", criterion_6(&fx)),
    ];

    let start = Instant::now();
    let gold = fx.run(QuStrategy::GoldSr, AblationMask::default(), 100);
    let heuristic = fx.run(QuStrategy::HeuristicSr, AblationMask::default(), 100);
    let elapsed = start.elapsed();
    let ablate: AblationMask = "question_entity".parse().expect("ablation");
    let runs = Runs {
        gold,
        heuristic,
        ablated: fx.run(QuStrategy::GoldSr, ablate, 100),
        prepend: fx.run(QuStrategy::PrependAll, AblationMask::default(), 100),
        elapsed,
    };
    results.push((7, "end-to-end fixture run", criterion_7(&runs)));
    results.push((8, "metric laws", criterion_8(&fx, &runs)));
    results.push((9, "significance tests", criterion_9()));
    results.push((10, "training filter", criterion_10(&fx)));
    results.push((11, "ablation plumbing", criterion_11(&runs)));

    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} {name}: FAIL ({why})");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
