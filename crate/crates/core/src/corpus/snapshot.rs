//! On-disk snapshot records.
//!
//! A snapshot directory holds `entities.json`, `facts.json`, `pages.json`,
//! `links.json` and `stopwords.txt`. These records mirror the files one to
//! one; [`Corpus::from_snapshot`](super::Corpus::from_snapshot) validates
//! and indexes them.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeRecord {
    pub label: String,
    pub freq: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntityRecord {
    pub id: String,
    pub label: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub types: Vec<TypeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub page_id: Option<String>,
}

/// Exactly one of `entity` / `literal` must be set.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ObjectRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub literal: Option<String>,
}

impl ObjectRecord {
    pub fn entity(id: &str) -> Self {
        ObjectRecord {
            entity: Some(id.to_string()),
            literal: None,
        }
    }

    pub fn literal(text: &str) -> Self {
        ObjectRecord {
            entity: None,
            literal: Some(text.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualifierRecord {
    pub predicate: String,
    pub object: ObjectRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactRecord {
    pub fact_id: String,
    pub subject: String,
    pub predicate: String,
    pub object: ObjectRecord,
    #[serde(default)]
    pub qualifiers: Vec<QualifierRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caption: Option<String>,
    pub headers: Vec<String>,
    #[serde(default)]
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoboxRecord {
    pub attribute: String,
    #[serde(default)]
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorRecord {
    pub surface: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageRecord {
    pub page_id: String,
    pub title: String,
    pub entity: String,
    #[serde(default)]
    pub sentences: Vec<String>,
    #[serde(default)]
    pub tables: Vec<TableRecord>,
    #[serde(default)]
    pub infobox: Vec<InfoboxRecord>,
    #[serde(default)]
    pub anchors: Vec<AnchorRecord>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Snapshot {
    pub entities: Vec<EntityRecord>,
    pub facts: Vec<FactRecord>,
    pub pages: Vec<PageRecord>,
    pub links: BTreeMap<String, String>,
    pub stopwords: Vec<String>,
}

fn read_json<T: DeserializeOwned>(dir: &Path, name: &str) -> Result<T> {
    let path = dir.join(name);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::json(&path, &e))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(value).expect("snapshot records serialize");
    fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))
}

impl Snapshot {
    pub fn read(dir: &Path) -> Result<Self> {
        let stop_path = dir.join("stopwords.txt");
        let stopwords = fs::read_to_string(&stop_path)
            .map_err(|e| Error::io(&stop_path, e))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect();
        Ok(Snapshot {
            entities: read_json(dir, "entities.json")?,
            facts: read_json(dir, "facts.json")?,
            pages: read_json(dir, "pages.json")?,
            links: read_json(dir, "links.json")?,
            stopwords,
        })
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_json(dir, "entities.json", &self.entities)?;
        write_json(dir, "facts.json", &self.facts)?;
        write_json(dir, "pages.json", &self.pages)?;
        write_json(dir, "links.json", &self.links)?;
        let stop_path = dir.join("stopwords.txt");
        fs::write(&stop_path, self.stopwords.join("\n") + "\n").map_err(|e| Error::io(&stop_path, e))
    }
}
