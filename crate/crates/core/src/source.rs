use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The four kinds of heterogeneous evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Kb,
    Text,
    Table,
    Info,
}

impl Source {
    pub const ALL: [Source; 4] = [Source::Kb, Source::Text, Source::Table, Source::Info];

    pub fn as_str(self) -> &'static str {
        match self {
            Source::Kb => "kb",
            Source::Text => "text",
            Source::Table => "table",
            Source::Info => "info",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_lowercase().as_str() {
            "kb" => Ok(Source::Kb),
            "text" => Ok(Source::Text),
            "table" => Ok(Source::Table),
            "info" | "infobox" => Ok(Source::Info),
            other => Err(Error::InvalidInput(format!("unknown source {other:?}"))),
        }
    }
}

/// A set of sources, e.g. for single-source or pairwise runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Source>", from = "Vec<Source>")]
pub struct SourceMask(u8);

impl SourceMask {
    pub const ALL: SourceMask = SourceMask(0b1111);
    pub const NONE: SourceMask = SourceMask(0);

    fn bit(s: Source) -> u8 {
        1 << (s as u8)
    }

    pub fn only(s: Source) -> Self {
        SourceMask(Self::bit(s))
    }

    pub fn with(self, s: Source) -> Self {
        SourceMask(self.0 | Self::bit(s))
    }

    pub fn contains(self, s: Source) -> bool {
        self.0 & Self::bit(s) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Source> {
        Source::ALL.into_iter().filter(move |s| self.contains(*s))
    }
}

impl Default for SourceMask {
    fn default() -> Self {
        SourceMask::ALL
    }
}

impl FromIterator<Source> for SourceMask {
    fn from_iter<I: IntoIterator<Item = Source>>(iter: I) -> Self {
        iter.into_iter().fold(SourceMask::NONE, SourceMask::with)
    }
}

impl From<SourceMask> for Vec<Source> {
    fn from(m: SourceMask) -> Self {
        m.iter().collect()
    }
}

impl From<Vec<Source>> for SourceMask {
    fn from(v: Vec<Source>) -> Self {
        v.into_iter().collect()
    }
}

impl FromStr for SourceMask {
    type Err = Error;

    /// Comma-separated list, e.g. `kb,text`; `all` selects every source.
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(SourceMask::ALL);
        }
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(Source::from_str)
            .collect()
    }
}

impl fmt::Display for SourceMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.iter().map(Source::as_str).collect();
        f.write_str(&parts.join(","))
    }
}
