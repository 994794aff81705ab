//! Tokenization and surface normalization shared by every stage.
//!
//! A token is a maximal run of alphanumeric characters; everything else
//! separates tokens. Matching is always done on lowercased tokens, so
//! "Coster-Waldau", "coster waldau" and "COSTER WALDAU" share one key.

use std::collections::{BTreeSet, HashSet};
use std::sync::LazyLock;

const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords.txt");

static DEFAULT: LazyLock<Stopwords> = LazyLock::new(|| Stopwords::from_lines(DEFAULT_STOPWORDS));

/// The bundled English stopword list.
pub fn default_stopwords() -> &'static Stopwords {
    &DEFAULT
}

/// A token borrowed from its source text, with byte offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub lower: String,
    pub start: usize,
    pub end: usize,
}

pub fn tokens(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_alphanumeric(), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                out.push(make_token(text, s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(make_token(text, s, text.len()));
    }
    out
}

fn make_token(text: &str, start: usize, end: usize) -> Token<'_> {
    let slice = &text[start..end];
    Token {
        text: slice,
        lower: slice.to_lowercase(),
        start,
        end,
    }
}

/// Lowercased tokens of `text`.
pub fn tokenize(text: &str) -> Vec<String> {
    tokens(text).into_iter().map(|t| t.lower).collect()
}

/// Lexicon key: lowercase, punctuation removed, whitespace collapsed.
pub fn normalize_key(text: &str) -> String {
    tokenize(text).join(" ")
}

/// Case-insensitive phrase containment on token boundaries.
pub fn contains_phrase(haystack: &str, needle: &str) -> bool {
    let needle = tokenize(needle);
    if needle.is_empty() {
        return false;
    }
    let hay = tokenize(haystack);
    hay.windows(needle.len()).any(|w| w == needle.as_slice())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stopwords {
    words: HashSet<String>,
}

impl Stopwords {
    pub fn from_lines(text: &str) -> Self {
        let words = text
            .lines()
            .map(|l| l.trim().to_lowercase())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Stopwords { words }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn sorted(&self) -> BTreeSet<&str> {
        self.words.iter().map(String::as_str).collect()
    }
}

impl Default for Stopwords {
    fn default() -> Self {
        DEFAULT.clone()
    }
}
