//! Okapi BM25 over a per-question document pool.

use std::collections::HashMap;

use crate::text::{self, Stopwords};

/// Collection statistics of one retrieved pool.
#[derive(Debug, Clone, PartialEq)]
pub struct Bm25Stats {
    pub n_docs: usize,
    pub avgdl: f64,
    pub df: HashMap<String, usize>,
}

impl Bm25Stats {
    pub fn from_docs<S: AsRef<str>>(docs: &[Vec<S>]) -> Self {
        let mut df: HashMap<String, usize> = HashMap::new();
        let mut total = 0usize;
        for doc in docs {
            total += doc.len();
            let mut uniq: Vec<&str> = doc.iter().map(AsRef::as_ref).collect();
            uniq.sort_unstable();
            uniq.dedup();
            for t in uniq {
                *df.entry(t.to_string()).or_default() += 1;
            }
        }
        Bm25Stats {
            n_docs: docs.len(),
            avgdl: if docs.is_empty() { 0.0 } else { total as f64 / docs.len() as f64 },
            df,
        }
    }

    /// ln((N − n + 0.5)/(n + 0.5) + 1); never negative.
    pub fn idf(&self, term: &str) -> f64 {
        let n = self.df.get(term).copied().unwrap_or(0) as f64;
        ((self.n_docs as f64 - n + 0.5) / (n + 0.5) + 1.0).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Bm25Params { k1: 1.5, b: 0.75 }
    }
}

/// Query tokens: lowercased, stopwords removed, duplicates kept.
pub fn query_tokens(query: &str, stopwords: &Stopwords) -> Vec<String> {
    text::tokenize(query)
        .into_iter()
        .filter(|t| !stopwords.contains(t))
        .collect()
}

/// Document tokens keep stopwords.
pub fn doc_tokens(doc: &str) -> Vec<String> {
    text::tokenize(doc)
}

pub fn bm25_score<S: AsRef<str>>(query: &[String], doc: &[S], stats: &Bm25Stats, params: Bm25Params) -> f64 {
    if query.is_empty() || doc.is_empty() {
        return 0.0;
    }
    let mut tf: HashMap<&str, usize> = HashMap::new();
    for t in doc {
        *tf.entry(t.as_ref()).or_default() += 1;
    }
    let norm = if stats.avgdl > 0.0 {
        1.0 - params.b + params.b * doc.len() as f64 / stats.avgdl
    } else {
        1.0
    };
    query
        .iter()
        .map(|q| match tf.get(q.as_str()) {
            Some(&f) => {
                let f = f as f64;
                stats.idf(q) * f * (params.k1 + 1.0) / (f + params.k1 * norm)
            }
            None => 0.0,
        })
        .sum()
}
