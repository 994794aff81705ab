use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hetconv_core::benchmark::{load_convmix, save_convmix, split_convmix, Conversation};
use hetconv_core::corpus::{Corpus, CorpusCounts, Snapshot};
use hetconv_core::evaluation::{evaluate_run, mcnemar, paired_t_test, read_run, MetricsReport, RunRecord};
use hetconv_core::pipeline::{write_run, HistoryMode, Pipeline, PipelineConfig};
use hetconv_core::qu::{AblationMask, QuStrategy};
use hetconv_core::retrieval::write_evidence_dump;
use hetconv_core::session::SessionStore;
use hetconv_core::source::{Source, SourceMask};
use hetconv_core::supervision::write_labels;
use hetconv_core::{Error, Result};

use crate::service::{router, AppState};

#[derive(Debug, Parser)]
#[command(name = "hetconv", version, about = "Conversational QA over KB facts, text, tables and infoboxes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a corpus snapshot (and benchmark), optionally re-writing or splitting them.
    Ingest(IngestArgs),
    /// Derive gold SRs by distant supervision; one labeled turn per line.
    Label(LabelArgs),
    /// Run the pipeline over a benchmark; writes a run file and evidence dumps.
    Run(RunArgs),
    /// Score a run file.
    Eval(EvalArgs),
    /// Significance of the difference between two runs.
    Compare(CompareArgs),
    /// Serve conversation sessions over HTTP.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SplitName {
    Train,
    Dev,
    Test,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[arg(long)]
    pub benchmark: PathBuf,
    /// Use one part of the seeded 60:20:20 split instead of the whole file.
    #[arg(long, value_enum)]
    pub split: Option<SplitName>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

impl BenchmarkArgs {
    pub fn load(&self) -> Result<Vec<Conversation>> {
        let convs = load_convmix(&self.benchmark)?;
        Ok(match self.split {
            None => convs,
            Some(which) => {
                let split = split_convmix(&convs, self.seed);
                match which {
                    SplitName::Train => split.train,
                    SplitName::Dev => split.dev,
                    SplitName::Test => split.test,
                }
            }
        })
    }
}

/// Pipeline settings: a config file, overridden by individual flags.
#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// TOML or JSON pipeline config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub corpus: PathBuf,
    /// Question understanding strategy, e.g. heuristic_sr, gold_sr, prepend_all.
    #[arg(long)]
    pub qu: Option<QuStrategy>,
    /// History answers: gold or predicted.
    #[arg(long)]
    pub mode: Option<HistoryMode>,
    /// Comma-separated subset of kb,text,table,info.
    #[arg(long)]
    pub sources: Option<String>,
    /// Evidences kept after scoring.
    #[arg(long)]
    pub e: Option<usize>,
    /// Comma-separated SR slots to blank: context,question_entity,predicate,type,ordering.
    #[arg(long)]
    pub ablate: Option<AblationMask>,
}

pub fn parse_sources(text: &str) -> Result<SourceMask> {
    let mask: SourceMask = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse::<Source>)
        .collect::<Result<_>>()?;
    if mask.is_empty() {
        return Err(Error::InvalidInput("--sources selects no source".into()));
    }
    Ok(mask)
}

impl PipelineArgs {
    pub fn config(&self) -> Result<PipelineConfig> {
        let mut cfg = match &self.config {
            Some(path) => PipelineConfig::load(path)?,
            None => PipelineConfig::default(),
        };
        if let Some(qu) = self.qu {
            cfg.qu = qu;
        }
        if let Some(mode) = self.mode {
            cfg.history_mode = mode;
        }
        if let Some(s) = &self.sources {
            cfg.retriever.sources = parse_sources(s)?;
        }
        if let Some(e) = self.e {
            cfg.retriever.e = e;
        }
        if let Some(a) = &self.ablate {
            cfg.ablate = a.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub benchmark: Option<PathBuf>,
    /// Write the validated snapshot here in canonical form.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write train.json, dev.json and test.json of the benchmark here.
    #[arg(long, requires = "benchmark")]
    pub split_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[command(flatten)]
    pub bench: BenchmarkArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[command(flatten)]
    pub bench: BenchmarkArgs,
    /// Run file (JSONL, one record per question).
    #[arg(long)]
    pub out: PathBuf,
    /// Per-question evidence dumps; defaults to `<out>.evidence/`.
    #[arg(long)]
    pub evidence_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub bench: BenchmarkArgs,
    #[arg(long)]
    pub run: PathBuf,
    /// Print the full report as JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub bench: BenchmarkArgs,
    #[arg(long)]
    pub run_a: PathBuf,
    #[arg(long)]
    pub run_b: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[arg(long, default_value = "127.0.0.1:8080")]
    pub addr: String,
    /// Persist sessions as JSON files in this directory.
    #[arg(long)]
    pub sessions: Option<PathBuf>,
    /// Allowed CORS origin; repeatable. Any origin when absent.
    #[arg(long = "cors-origin")]
    pub cors_origins: Vec<String>,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Ingest(a) => ingest(&a),
        Command::Label(a) => label(&a),
        Command::Run(a) => run_benchmark(&a),
        Command::Eval(a) => eval(&a),
        Command::Compare(a) => compare(&a),
        Command::Serve(a) => serve(a),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::Io {
            path: parent.to_path_buf(),
            source: e,
        })?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    }
}

#[derive(Serialize)]
struct IngestReport {
    corpus: CorpusCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    conversations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    questions: Option<usize>,
}

fn ingest(a: &IngestArgs) -> Result<()> {
    let snapshot = Snapshot::read(&a.corpus)?;
    let corpus = Corpus::from_snapshot(snapshot.clone())?;
    let mut report = IngestReport {
        corpus: corpus.counts(),
        conversations: None,
        questions: None,
    };
    if let Some(out) = &a.out {
        snapshot.write(out)?;
    }
    if let Some(path) = &a.benchmark {
        let convs = load_convmix(path)?;
        report.conversations = Some(convs.len());
        report.questions = Some(convs.iter().map(|c| c.turns.len()).sum());
        if let Some(dir) = &a.split_dir {
            let split = split_convmix(&convs, a.seed);
            fs::create_dir_all(dir).map_err(io_err(dir))?;
            for (name, part) in [("train", &split.train), ("dev", &split.dev), ("test", &split.test)] {
                save_convmix(part, dir.join(format!("{name}.json")))?;
            }
        }
    }
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(())
}

fn label(a: &LabelArgs) -> Result<()> {
    let corpus = Corpus::load_snapshot(&a.pipeline.corpus)?;
    let pipeline = Pipeline::new(&corpus, a.pipeline.config()?)?;
    let convs = a.bench.load()?;
    let mut out = create(&a.out)?;
    let mut unlabeled = 0;
    for conv in &convs {
        let turns = pipeline.label(conv)?;
        unlabeled += turns.iter().filter(|t| t.relevant_mentions.is_empty()).count();
        write_labels(&mut out, &conv.conv_id, &turns).map_err(io_err(&a.out))?;
    }
    out.flush().map_err(io_err(&a.out))?;
    let total: usize = convs.iter().map(|c| c.turns.len()).sum();
    eprintln!("labeled {total} turns ({unlabeled} without a relevant mention) -> {}", a.out.display());
    Ok(())
}

fn run_benchmark(a: &RunArgs) -> Result<()> {
    let corpus = Corpus::load_snapshot(&a.pipeline.corpus)?;
    let pipeline = Pipeline::new(&corpus, a.pipeline.config()?)?;
    let convs = a.bench.load()?;
    let output = pipeline.run(&convs)?;

    let mut out = create(&a.out)?;
    write_run(&mut out, &output.records).map_err(io_err(&a.out))?;
    out.flush().map_err(io_err(&a.out))?;

    let dir = a.evidence_dir.clone().unwrap_or_else(|| {
        let mut name = a.out.file_name().unwrap_or_default().to_os_string();
        name.push(".evidence");
        a.out.with_file_name(name)
    });
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    for conv in &convs {
        for (i, turn) in output.outputs[&conv.conv_id].iter().enumerate() {
            let path = dir.join(format!("{}-{i}.jsonl", conv.conv_id));
            let mut w = create(&path)?;
            write_evidence_dump(&mut w, &turn.ranked).map_err(io_err(&path))?;
            w.flush().map_err(io_err(&path))?;
        }
    }
    eprintln!(
        "{} questions -> {} (evidences in {})",
        output.records.len(),
        a.out.display(),
        dir.display()
    );
    Ok(())
}

fn load_run(path: &Path) -> Result<Vec<RunRecord>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    read_run(&text, path)
}

fn eval(a: &EvalArgs) -> Result<()> {
    let convs = a.bench.load()?;
    let report = evaluate_run(&load_run(&a.run)?, &convs)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", report.to_table());
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub n: usize,
    pub p_at_1_a: f64,
    pub p_at_1_b: f64,
    /// Questions only A answered correctly.
    pub only_a: usize,
    /// Questions only B answered correctly.
    pub only_b: usize,
    pub mcnemar_statistic: f64,
    pub mcnemar_p: f64,
    pub mean_answering_a: f64,
    pub mean_answering_b: f64,
    /// `None` when the paired differences have zero variance.
    pub t_statistic: Option<f64>,
    pub t_p: Option<f64>,
}

/// McNemar on per-question P@1 and a paired t-test on the number of
/// answering evidences per question. Both runs must cover the same
/// questions.
pub fn compare_runs(a: &[RunRecord], b: &[RunRecord], convs: &[Conversation]) -> Result<Comparison> {
    let keys = |run: &[RunRecord]| run.iter().map(|r| (r.conv_id.clone(), r.turn)).collect::<BTreeSet<_>>();
    let (ka, kb) = (keys(a), keys(b));
    if ka != kb || a.len() != ka.len() || b.len() != kb.len() {
        let diff: Vec<String> = ka
            .symmetric_difference(&kb)
            .take(10)
            .map(|(c, t)| format!("{c}/{t}"))
            .collect();
        return Err(Error::InvalidInput(format!(
            "runs cover different questions ({} vs {} records; e.g. {})",
            a.len(),
            b.len(),
            if diff.is_empty() { "duplicates".to_string() } else { diff.join(", ") }
        )));
    }
    let ra = evaluate_run(a, convs)?;
    let rb = evaluate_run(b, convs)?;
    let correct = |r: &MetricsReport| r.records.iter().map(|q| q.p_at_1 == 1).collect::<Vec<_>>();
    let (ca, cb) = (correct(&ra), correct(&rb));
    let (stat, p) = mcnemar(&ca, &cb)?;

    let golds: BTreeMap<(&str, usize), _> = convs
        .iter()
        .flat_map(|c| c.turns.iter().enumerate().map(move |(i, t)| ((c.conv_id.as_str(), i), &t.gold_answers)))
        .collect();
    let counts = |run: &[RunRecord]| {
        let by_key: BTreeMap<(&str, usize), &RunRecord> = run.iter().map(|r| ((r.conv_id.as_str(), r.turn), r)).collect();
        ra.records
            .iter()
            .map(|q| {
                let key = (q.conv_id.as_str(), q.turn);
                by_key[&key].answering_count(golds[&key]) as f64
            })
            .collect::<Vec<_>>()
    };
    let (na, nb) = (counts(a), counts(b));
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len().max(1) as f64;
    let (t, tp) = match paired_t_test(&na, &nb) {
        Ok((t, p)) => (Some(t), Some(p)),
        Err(Error::Undefined(_)) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(Comparison {
        n: ca.len(),
        p_at_1_a: ra.p_at_1,
        p_at_1_b: rb.p_at_1,
        only_a: ca.iter().zip(&cb).filter(|(x, y)| **x && !**y).count(),
        only_b: ca.iter().zip(&cb).filter(|(x, y)| !**x && **y).count(),
        mcnemar_statistic: stat,
        mcnemar_p: p,
        mean_answering_a: mean(&na),
        mean_answering_b: mean(&nb),
        t_statistic: t,
        t_p: tp,
    })
}

fn compare(a: &CompareArgs) -> Result<()> {
    let convs = a.bench.load()?;
    let c = compare_runs(&load_run(&a.run_a)?, &load_run(&a.run_b)?, &convs)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&c).expect("comparison serializes"));
        return Ok(());
    }
    println!("questions        {}", c.n);
    println!("P@1              A {:.3}  B {:.3}", c.p_at_1_a, c.p_at_1_b);
    println!(
        "McNemar          only A {}  only B {}  chi2 {:.4}  p {:.4}",
        c.only_a, c.only_b, c.mcnemar_statistic, c.mcnemar_p
    );
    match (c.t_statistic, c.t_p) {
        (Some(t), Some(p)) => println!(
            "answering count  A {:.2}  B {:.2}  t {t:.4}  p {p:.4}",
            c.mean_answering_a, c.mean_answering_b
        ),
        _ => println!(
            "answering count  A {:.2}  B {:.2}  t undefined (identical differences)",
            c.mean_answering_a, c.mean_answering_b
        ),
    }
    Ok(())
}

fn serve(a: ServeArgs) -> Result<()> {
    let config = a.pipeline.config()?;
    // the service lives as long as the process
    let corpus: &'static Corpus = Box::leak(Box::new(Corpus::load_snapshot(&a.pipeline.corpus)?));
    let pipeline = Pipeline::new(corpus, config)?;
    let sessions = match &a.sessions {
        Some(dir) => SessionStore::persistent(dir)?,
        None => SessionStore::in_memory(),
    };
    let app = router(Arc::new(AppState { pipeline, sessions }), &a.cors_origins);
    let rt = tokio::runtime::Runtime::new().map_err(|e| Error::Transport(format!("tokio runtime: {e}")))?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&a.addr)
            .await
            .map_err(|e| Error::Transport(format!("cannot bind {}: {e}", a.addr)))?;
        let local = listener.local_addr().map_err(|e| Error::Transport(e.to_string()))?;
        eprintln!("listening on http://{local}");
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(|e| Error::Transport(format!("server error: {e}")))
    })
}
