//! Literal recognition and normalization to the KB format.
//!
//! Dates become ISO `YYYY-MM-DD`, bare four-digit years stay years, and
//! numbers become canonical decimals with an optional lowercased unit.
//! Numeric dates are read day-first ("11-06-1969" is 11 June 1969).

use std::fmt;
use std::sync::LazyLock;

use chrono::NaiveDate;
use regex::Regex;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LiteralKind {
    String,
    Date,
    Year,
    Number,
}

impl LiteralKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LiteralKind::String => "string",
            LiteralKind::Date => "date",
            LiteralKind::Year => "year",
            LiteralKind::Number => "number",
        }
    }
}

impl fmt::Display for LiteralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub kind: LiteralKind,
    pub value: String,
    pub surface: String,
}

const MONTHS: &str = "january|february|march|april|may|june|july|august|september|october|november|december|jan|feb|mar|apr|jun|jul|aug|sept|sep|oct|nov|dec";

static DAY_MONTH_YEAR: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(&format!(r"(?i)\b(\d{{1,2}})\s+({MONTHS})\.?,?\s+(\d{{1,4}})\b")).unwrap()
});
static MONTH_DAY_YEAR: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(&format!(r"(?i)\b({MONTHS})\.?\s+(\d{{1,2}}),?\s+(\d{{1,4}})\b")).unwrap()
});
static NUMERIC_DATE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\b(\d{1,2})[-/.](\d{1,2})[-/.](\d{4})\b").unwrap());
static ISO_DATE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\b(\d{4})-(\d{2})-(\d{2})\b").unwrap());
static YEAR_IN_TEXT: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"\b\d{4}\b").unwrap());
static YEAR: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^\d{4}$").unwrap());
static NUMBER: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^([+-]?)(\d{1,3}(?:,\d{3})+|\d+)(?:\.(\d+))?(?:\s+([A-Za-z%]+(?:\s[A-Za-z]+)?))?$")
        .unwrap()
});

fn month_number(name: &str) -> Option<u32> {
    let name = name.to_lowercase();
    let m = match name.get(..3)? {
        "jan" => 1,
        "feb" => 2,
        "mar" => 3,
        "apr" => 4,
        "may" => 5,
        "jun" => 6,
        "jul" => 7,
        "aug" => 8,
        "sep" => 9,
        "oct" => 10,
        "nov" => 11,
        "dec" => 12,
        _ => return None,
    };
    Some(m)
}

fn iso(year: &str, month: u32, day: &str) -> Option<String> {
    let year: i32 = year.parse().ok()?;
    let day: u32 = day.parse().ok()?;
    let date = NaiveDate::from_ymd_opt(year, month, day)?;
    Some(date.format("%Y-%m-%d").to_string())
}

/// A date match: byte range in the haystack and the ISO value.
fn date_matches(text: &str) -> Vec<(usize, usize, String)> {
    let mut found = Vec::new();
    for caps in DAY_MONTH_YEAR.captures_iter(text) {
        let m = caps.get(0).unwrap();
        if let Some(v) = month_number(&caps[2]).and_then(|mo| iso(&caps[3], mo, &caps[1])) {
            found.push((m.start(), m.end(), v));
        }
    }
    for caps in MONTH_DAY_YEAR.captures_iter(text) {
        let m = caps.get(0).unwrap();
        if let Some(v) = month_number(&caps[1]).and_then(|mo| iso(&caps[3], mo, &caps[2])) {
            found.push((m.start(), m.end(), v));
        }
    }
    for caps in NUMERIC_DATE.captures_iter(text) {
        let m = caps.get(0).unwrap();
        let month: Option<u32> = caps[2].parse().ok();
        if let Some(v) = month.and_then(|mo| iso(&caps[3], mo, &caps[1])) {
            found.push((m.start(), m.end(), v));
        }
    }
    for caps in ISO_DATE.captures_iter(text) {
        let m = caps.get(0).unwrap();
        let month: Option<u32> = caps[2].parse().ok();
        if let Some(v) = month.and_then(|mo| iso(&caps[1], mo, &caps[3])) {
            found.push((m.start(), m.end(), v));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut kept: Vec<(usize, usize, String)> = Vec::new();
    for m in found {
        if kept.last().is_none_or(|k| m.0 >= k.1) {
            kept.push(m);
        }
    }
    kept
}

fn canonical_number(caps: &regex::Captures<'_>) -> String {
    let sign = if &caps[1] == "-" { "-" } else { "" };
    let int_part = caps[2].replace(',', "");
    let int_part = int_part.trim_start_matches('0');
    let int_part = if int_part.is_empty() { "0" } else { int_part };
    let frac = caps
        .get(3)
        .map(|f| f.as_str().trim_end_matches('0'))
        .unwrap_or("");
    let mut out = String::from(sign);
    out.push_str(int_part);
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    if out == "-0" {
        out = "0".to_string();
    }
    if let Some(unit) = caps.get(4) {
        out.push(' ');
        out.push_str(&unit.as_str().to_lowercase());
    }
    out
}

/// Total function: unrecognized input becomes a string literal.
pub fn normalize_literal(text: &str) -> Literal {
    let trimmed = text.trim();
    let literal = |kind, value: String| Literal {
        kind,
        value,
        surface: text.to_string(),
    };
    if let [(0, end, value)] = date_matches(trimmed).as_slice() {
        if *end == trimmed.len() {
            return literal(LiteralKind::Date, value.clone());
        }
    }
    if YEAR.is_match(trimmed) {
        return literal(LiteralKind::Year, trimmed.to_string());
    }
    if let Some(caps) = NUMBER.captures(trimmed) {
        return literal(LiteralKind::Number, canonical_number(&caps));
    }
    literal(LiteralKind::String, trimmed.to_string())
}

/// Dates and stand-alone years occurring inside running text.
pub fn find_literals(text: &str) -> Vec<Literal> {
    let dates = date_matches(text);
    let mut out: Vec<(usize, Literal)> = dates
        .iter()
        .map(|(s, e, v)| {
            (
                *s,
                Literal {
                    kind: LiteralKind::Date,
                    value: v.clone(),
                    surface: text[*s..*e].to_string(),
                },
            )
        })
        .collect();
    for m in YEAR_IN_TEXT.find_iter(text) {
        let inside_date = dates.iter().any(|(s, e, _)| m.start() < *e && m.end() > *s);
        // part of a longer numeric token such as "2011-04" or "1,2011"
        let glued = text[..m.start()].ends_with(['-', '/', '.', ',']) && m.start() > 1
            && text[..m.start() - 1].ends_with(|c: char| c.is_ascii_digit());
        if !inside_date && !glued {
            out.push((
                m.start(),
                Literal {
                    kind: LiteralKind::Year,
                    value: m.as_str().to_string(),
                    surface: m.as_str().to_string(),
                },
            ));
        }
    }
    out.sort_by_key(|(s, _)| *s);
    out.into_iter().map(|(_, l)| l).collect()
}
