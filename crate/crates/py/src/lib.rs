//! Python bindings. Results cross the boundary as plain dicts and lists.

use std::sync::{Arc, Mutex};

use pyo3::exceptions::{PyKeyError, PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use hetconv_core::benchmark::{load_convmix, Conversation};
use hetconv_core::corpus::Corpus;
use hetconv_core::evaluation::{self, read_run, RunRecord};
use hetconv_core::pipeline::{Pipeline, PipelineConfig};
use hetconv_core::qu::StructuredRepresentation;
use hetconv_core::retrieval::Retriever;
use hetconv_core::session::{Session, SrOverride};
use hetconv_core::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotFound(_) => PyKeyError::new_err(e.to_string()),
        Error::Sr(_) | Error::InvalidInput(_) | Error::Parse { .. } | Error::Schema { .. } | Error::Integrity(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Serializes through JSON into Python objects.
fn to_object<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Accepts a dict or a JSON string.
fn from_object<T: serde::de::DeserializeOwned>(value: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = if let Ok(s) = value.extract::<String>() {
        s
    } else {
        value.py().import("json")?.call_method1("dumps", (value,))?.extract()?
    };
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyclass(name = "Corpus", frozen)]
struct PyCorpus {
    inner: Arc<Corpus>,
}

#[pymethods]
impl PyCorpus {
    /// Loads a snapshot directory.
    #[new]
    fn new(path: &str) -> PyResult<Self> {
        let corpus = Corpus::load_snapshot(path).map_err(to_py)?;
        Ok(PyCorpus { inner: Arc::new(corpus) })
    }

    fn counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_object(py, &self.inner.counts())
    }

    /// Lexicon matches in `text` as (surface, start, end) token spans.
    fn match_mentions(&self, text: &str) -> Vec<(String, usize, usize)> {
        self.inner
            .match_mentions(text)
            .into_iter()
            .map(|m| (m.surface, m.start, m.end))
            .collect()
    }

    /// Ranked evidences for a keyword query under the default retriever.
    #[pyo3(signature = (query, e = 100))]
    fn retrieve<'py>(&self, py: Python<'py>, query: &str, e: usize) -> PyResult<Bound<'py, PyAny>> {
        let config = hetconv_core::retrieval::RetrieverConfig {
            e,
            ..Default::default()
        };
        config.validate().map_err(to_py)?;
        let retriever = hetconv_core::retrieval::CorpusRetriever::new(&self.inner, config);
        to_object(py, &retriever.retrieve(query).map_err(to_py)?)
    }
}

#[pyclass(name = "StructuredRepresentation", frozen, eq)]
#[derive(PartialEq)]
struct PySr {
    inner: StructuredRepresentation,
}

#[pymethods]
impl PySr {
    #[new]
    #[pyo3(signature = (context = Vec::new(), question_entities = Vec::new(), predicate = String::new(), answer_type = String::new()))]
    fn new(context: Vec<String>, question_entities: Vec<String>, predicate: String, answer_type: String) -> PyResult<Self> {
        let inner = StructuredRepresentation::new(context, question_entities, predicate, answer_type);
        inner.validate().map_err(|e| to_py(e.into()))?;
        Ok(PySr { inner })
    }

    /// Parses `ctx | qent | pred | type`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = StructuredRepresentation::parse(text).map_err(|e| to_py(e.into()))?;
        Ok(PySr { inner })
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    #[getter]
    fn context(&self) -> Vec<String> {
        self.inner.context_entities.clone()
    }

    #[getter]
    fn question_entities(&self) -> Vec<String> {
        self.inner.question_entities.clone()
    }

    #[getter]
    fn predicate(&self) -> String {
        self.inner.predicate.clone()
    }

    #[getter]
    fn answer_type(&self) -> String {
        self.inner.answer_type.clone()
    }

    fn __repr__(&self) -> String {
        format!("StructuredRepresentation({:?})", self.inner.serialize())
    }

    fn __str__(&self) -> String {
        self.inner.serialize()
    }
}

#[pyclass(name = "Pipeline", frozen)]
struct PyPipeline {
    corpus: Arc<Corpus>,
    config: PipelineConfig,
}

impl PyPipeline {
    fn pipeline(&self) -> Pipeline<'_> {
        Pipeline::new(&self.corpus, self.config.clone()).expect("validated at construction")
    }
}

fn load_benchmark(path: &str) -> PyResult<Vec<Conversation>> {
    load_convmix(path).map_err(to_py)
}

#[pymethods]
impl PyPipeline {
    /// `config` is a dict or JSON string in the pipeline config format.
    #[new]
    #[pyo3(signature = (corpus, config = None))]
    fn new(corpus: &PyCorpus, config: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let config: PipelineConfig = match config {
            Some(c) => from_object(c)?,
            None => PipelineConfig::default(),
        };
        config.validate().map_err(to_py)?;
        Ok(PyPipeline {
            corpus: corpus.inner.clone(),
            config,
        })
    }

    fn config<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_object(py, &self.config)
    }

    /// Run records (one dict per question) for a benchmark file.
    fn run<'py>(&self, py: Python<'py>, benchmark: &str) -> PyResult<Bound<'py, PyAny>> {
        let convs = load_benchmark(benchmark)?;
        let out = py.detach(|| self.pipeline().run(&convs)).map_err(to_py)?;
        to_object(py, &out.records)
    }

    /// Distant-supervision labels for every conversation of a benchmark.
    fn label<'py>(&self, py: Python<'py>, benchmark: &str) -> PyResult<Bound<'py, PyAny>> {
        let convs = load_benchmark(benchmark)?;
        let labels = py
            .detach(|| {
                let p = self.pipeline();
                convs
                    .iter()
                    .map(|c| p.label(c).map(|t| (c.conv_id.clone(), t)))
                    .collect::<hetconv_core::Result<Vec<_>>>()
            })
            .map_err(to_py)?;
        let out = PyDict::new(py);
        for (conv_id, turns) in labels {
            out.set_item(conv_id, to_object(py, &turns)?)?;
        }
        Ok(out.into_any())
    }

    fn session(&self) -> PySession {
        PySession {
            pipeline: PyPipeline {
                corpus: self.corpus.clone(),
                config: self.config.clone(),
            },
            session: Mutex::new(Session::new("local")),
        }
    }
}

/// A local conversation whose history holds the system's own answers.
#[pyclass(name = "Session", frozen)]
struct PySession {
    pipeline: PyPipeline,
    session: Mutex<Session>,
}

#[pymethods]
impl PySession {
    /// `sr_override` is `"ctx | qent | pred | type"` or a list of 4 slots.
    #[pyo3(signature = (question, sr_override = None))]
    fn ask<'py>(&self, py: Python<'py>, question: &str, sr_override: Option<&Bound<'_, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let over: Option<SrOverride> = sr_override.map(from_object).transpose()?;
        let turn = py
            .detach(|| {
                let pipeline = self.pipeline.pipeline();
                let mut s = self.session.lock().expect("session lock");
                s.ask(&pipeline, question, over.as_ref()).cloned()
            })
            .map_err(to_py)?;
        to_object(py, &turn)
    }

    fn history<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let s = self.session.lock().expect("session lock");
        to_object(py, &s.history)
    }

    fn __len__(&self) -> usize {
        self.session.lock().expect("session lock").turns.len()
    }
}

/// Scores run records (as returned by `Pipeline.run`, or a JSONL path)
/// against a benchmark file.
#[pyfunction]
fn evaluate<'py>(py: Python<'py>, run: &Bound<'_, PyAny>, benchmark: &str) -> PyResult<Bound<'py, PyAny>> {
    let records: Vec<RunRecord> = match run.extract::<String>() {
        Ok(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| PyOSError::new_err(format!("{path}: {e}")))?;
            read_run(&text, std::path::Path::new(&path)).map_err(to_py)?
        }
        Err(_) => from_object(run)?,
    };
    let report = evaluation::evaluate_run(&records, &load_benchmark(benchmark)?).map_err(to_py)?;
    to_object(py, &report)
}

#[pyfunction]
fn levenshtein(a: &str, b: &str) -> usize {
    evaluation::levenshtein(a, b)
}

/// Continuity-corrected McNemar from discordant counts: (statistic, p).
#[pyfunction]
fn mcnemar(b: usize, c: usize) -> (f64, f64) {
    evaluation::mcnemar_counts(b, c)
}

/// Paired two-sided t-test: (t, p).
#[pyfunction]
fn paired_t_test(a: Vec<f64>, b: Vec<f64>) -> PyResult<(f64, f64)> {
    evaluation::paired_t_test(&a, &b).map_err(to_py)
}

#[pymodule]
fn hetconv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCorpus>()?;
    m.add_class::<PySr>()?;
    m.add_class::<PyPipeline>()?;
    m.add_class::<PySession>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(levenshtein, m)?)?;
    m.add_function(wrap_pyfunction!(mcnemar, m)?)?;
    m.add_function(wrap_pyfunction!(paired_t_test, m)?)?;
    Ok(())
}
