//! Immutable heterogeneous knowledge store.
//!
//! A [`Corpus`] holds KB facts, encyclopedia pages (sentences, tables,
//! infoboxes, anchors), the alias lexicon used for entity matching, and the
//! page-title link dictionary. It is built once from a [`Snapshot`] and only
//! read afterwards.

mod literal;
pub mod snapshot;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};

pub use literal::{find_literals, normalize_literal, Literal, LiteralKind};
pub use snapshot::Snapshot;

use crate::error::{Error, Result};
use crate::text::{self, Stopwords};
use snapshot::ObjectRecord;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntityId(String);

impl EntityId {
    pub fn new(id: impl Into<String>) -> Self {
        EntityId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for EntityId {
    fn from(s: &str) -> Self {
        EntityId(s.to_string())
    }
}

/// Normalized KB item: an entity or a literal value (surface dropped).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KbItem {
    Entity(EntityId),
    Literal { kind: LiteralKind, value: String },
}

impl KbItem {
    pub fn literal(lit: &Literal) -> Self {
        KbItem::Literal {
            kind: lit.kind,
            value: lit.value.clone(),
        }
    }

    /// Lexicographic identity used for deterministic tie-breaking.
    pub fn key(&self) -> String {
        match self {
            KbItem::Entity(id) => id.0.clone(),
            KbItem::Literal { kind, value } => format!("{kind}:{value}"),
        }
    }
}

impl fmt::Display for KbItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

impl From<EntityId> for KbItem {
    fn from(id: EntityId) -> Self {
        KbItem::Entity(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KbObject {
    Entity(EntityId),
    Literal(Literal),
}

impl KbObject {
    pub fn item(&self) -> KbItem {
        match self {
            KbObject::Entity(id) => KbItem::Entity(id.clone()),
            KbObject::Literal(l) => KbItem::literal(l),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KbFact {
    pub fact_id: String,
    pub subject: EntityId,
    pub predicate: String,
    pub object: KbObject,
    pub qualifiers: Vec<(String, KbObject)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityType {
    pub label: String,
    pub freq: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub id: EntityId,
    pub label: String,
    pub aliases: Vec<String>,
    /// Sorted by descending frequency, ties by label.
    pub types: Vec<EntityType>,
    pub page_id: Option<String>,
}

impl Entity {
    pub fn main_type(&self) -> Option<&str> {
        self.types.first().map(|t| t.label.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub caption: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Infobox {
    pub entries: Vec<(String, Vec<String>)>,
}

impl Infobox {
    pub fn lines(&self, attribute: &str) -> Option<&[String]> {
        self.entries
            .iter()
            .find(|(a, _)| a == attribute)
            .map(|(_, l)| l.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub surface: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WikiPage {
    pub page_id: String,
    pub title: String,
    pub entity: EntityId,
    pub sentences: Vec<String>,
    pub tables: Vec<Table>,
    pub infobox: Option<Infobox>,
    pub anchors: Vec<Anchor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub entity: EntityId,
    pub prior: u64,
}

/// An alias-lexicon match inside some text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MentionSpan {
    /// Original text of the span.
    pub surface: String,
    /// Lexicon key.
    pub key: String,
    /// Token range `[start, end)`.
    pub start: usize,
    pub end: usize,
}

fn serialize_stopwords<S: Serializer>(sw: &Stopwords, s: S) -> std::result::Result<S::Ok, S::Error> {
    sw.sorted().serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct Corpus {
    entities: BTreeMap<EntityId, Entity>,
    facts: BTreeMap<String, KbFact>,
    facts_by_subject: BTreeMap<EntityId, Vec<String>>,
    /// Includes qualifier objects.
    facts_by_object: BTreeMap<EntityId, Vec<String>>,
    pages: BTreeMap<String, WikiPage>,
    alias_lexicon: BTreeMap<String, Vec<LexiconEntry>>,
    link_dictionary: BTreeMap<String, EntityId>,
    #[serde(serialize_with = "serialize_stopwords")]
    stopwords: Stopwords,
    #[serde(skip)]
    max_alias_tokens: usize,
}

fn convert_object(rec: &ObjectRecord, ctx: &str, ids: &BTreeSet<String>) -> Result<KbObject> {
    match (&rec.entity, &rec.literal) {
        (Some(id), None) => {
            if !ids.contains(id) {
                return Err(Error::Integrity(format!("{ctx} references unknown entity {id}")));
            }
            Ok(KbObject::Entity(EntityId::new(id.clone())))
        }
        (None, Some(text)) => Ok(KbObject::Literal(normalize_literal(text))),
        _ => Err(Error::Integrity(format!(
            "{ctx} object must have exactly one of `entity` or `literal`"
        ))),
    }
}

impl Corpus {
    pub fn load_snapshot(dir: impl AsRef<Path>) -> Result<Corpus> {
        Corpus::from_snapshot(Snapshot::read(dir.as_ref())?)
    }

    pub fn from_snapshot(snap: Snapshot) -> Result<Corpus> {
        let mut ids = BTreeSet::new();
        for e in &snap.entities {
            if e.id.is_empty() {
                return Err(Error::Integrity("entity with empty id".into()));
            }
            if !ids.insert(e.id.clone()) {
                return Err(Error::Integrity(format!("duplicate entity id {}", e.id)));
            }
        }

        let mut facts = BTreeMap::new();
        let mut facts_by_subject: BTreeMap<EntityId, Vec<String>> = BTreeMap::new();
        let mut facts_by_object: BTreeMap<EntityId, Vec<String>> = BTreeMap::new();
        for f in &snap.facts {
            let ctx = format!("fact {}", f.fact_id);
            if !ids.contains(&f.subject) {
                return Err(Error::Integrity(format!(
                    "{ctx} subject references unknown entity {}",
                    f.subject
                )));
            }
            let object = convert_object(&f.object, &ctx, &ids)?;
            let qualifiers = f
                .qualifiers
                .iter()
                .map(|q| Ok((q.predicate.clone(), convert_object(&q.object, &ctx, &ids)?)))
                .collect::<Result<Vec<_>>>()?;
            let fact = KbFact {
                fact_id: f.fact_id.clone(),
                subject: EntityId::new(f.subject.clone()),
                predicate: f.predicate.clone(),
                object,
                qualifiers,
            };
            facts_by_subject
                .entry(fact.subject.clone())
                .or_default()
                .push(fact.fact_id.clone());
            let mut objects: BTreeSet<EntityId> = BTreeSet::new();
            for o in std::iter::once(&fact.object).chain(fact.qualifiers.iter().map(|(_, o)| o)) {
                if let KbObject::Entity(id) = o {
                    objects.insert(id.clone());
                }
            }
            for id in objects {
                facts_by_object.entry(id).or_default().push(fact.fact_id.clone());
            }
            if facts.insert(fact.fact_id.clone(), fact).is_some() {
                return Err(Error::Integrity(format!("duplicate fact id {}", f.fact_id)));
            }
        }
        for list in facts_by_subject.values_mut().chain(facts_by_object.values_mut()) {
            list.sort();
        }

        let mut pages = BTreeMap::new();
        for p in &snap.pages {
            if !ids.contains(&p.entity) {
                return Err(Error::Integrity(format!(
                    "page {} references unknown entity {}",
                    p.page_id, p.entity
                )));
            }
            let mut tables = Vec::new();
            for (ti, t) in p.tables.iter().enumerate() {
                for (ri, row) in t.rows.iter().enumerate() {
                    if row.len() != t.headers.len() {
                        return Err(Error::Integrity(format!(
                            "page {} table {ti} row {ri} has {} cells, expected {}",
                            p.page_id,
                            row.len(),
                            t.headers.len()
                        )));
                    }
                }
                tables.push(Table {
                    caption: t.caption.clone(),
                    headers: t.headers.clone(),
                    rows: t.rows.clone(),
                });
            }
            if let Some(bad) = p.infobox.iter().find(|e| e.attribute.trim().is_empty()) {
                return Err(Error::Integrity(format!(
                    "page {} has an infobox entry with empty attribute ({:?})",
                    p.page_id, bad.lines
                )));
            }
            let infobox = (!p.infobox.is_empty()).then(|| Infobox {
                entries: p
                    .infobox
                    .iter()
                    .map(|e| (e.attribute.clone(), e.lines.clone()))
                    .collect(),
            });
            let page = WikiPage {
                page_id: p.page_id.clone(),
                title: p.title.clone(),
                entity: EntityId::new(p.entity.clone()),
                sentences: p.sentences.iter().filter(|s| !s.trim().is_empty()).cloned().collect(),
                tables,
                infobox,
                anchors: p
                    .anchors
                    .iter()
                    .map(|a| Anchor {
                        surface: a.surface.clone(),
                        target: a.target.clone(),
                    })
                    .collect(),
            };
            if pages.insert(page.page_id.clone(), page).is_some() {
                return Err(Error::Integrity(format!("duplicate page id {}", p.page_id)));
            }
        }

        let mut link_dictionary = BTreeMap::new();
        for (title, id) in &snap.links {
            if !ids.contains(id) {
                return Err(Error::Integrity(format!(
                    "link {title:?} references unknown entity {id}"
                )));
            }
            link_dictionary.insert(title.clone(), EntityId::new(id.clone()));
        }

        // Popularity prior: KB degree plus incoming anchors, plus one.
        let mut prior: HashMap<&str, u64> = HashMap::new();
        for id in &ids {
            let deg = facts_by_subject.get(&EntityId::new(id.clone())).map_or(0, Vec::len)
                + facts_by_object.get(&EntityId::new(id.clone())).map_or(0, Vec::len);
            prior.insert(id.as_str(), 1 + deg as u64);
        }
        for page in pages.values() {
            for a in &page.anchors {
                if let Some(target) = link_dictionary.get(&a.target) {
                    *prior.get_mut(target.as_str()).expect("validated link") += 1;
                }
            }
        }

        let mut entities = BTreeMap::new();
        let mut alias_lexicon: BTreeMap<String, Vec<LexiconEntry>> = BTreeMap::new();
        for e in &snap.entities {
            if let Some(pid) = &e.page_id {
                if !pages.contains_key(pid) {
                    return Err(Error::Integrity(format!(
                        "entity {} references unknown page {pid}",
                        e.id
                    )));
                }
            }
            let mut types: Vec<EntityType> = e
                .types
                .iter()
                .map(|t| EntityType {
                    label: t.label.clone(),
                    freq: t.freq,
                })
                .collect();
            types.sort_by(|a, b| b.freq.cmp(&a.freq).then_with(|| a.label.cmp(&b.label)));
            let id = EntityId::new(e.id.clone());
            let keys: BTreeSet<String> = std::iter::once(&e.label)
                .chain(&e.aliases)
                .map(|s| text::normalize_key(s))
                .filter(|k| !k.is_empty())
                .collect();
            for key in keys {
                alias_lexicon.entry(key).or_default().push(LexiconEntry {
                    entity: id.clone(),
                    prior: prior[e.id.as_str()],
                });
            }
            entities.insert(
                id.clone(),
                Entity {
                    id,
                    label: e.label.clone(),
                    aliases: e.aliases.clone(),
                    types,
                    page_id: e.page_id.clone(),
                },
            );
        }
        for list in alias_lexicon.values_mut() {
            list.sort_by(|a, b| b.prior.cmp(&a.prior).then_with(|| a.entity.cmp(&b.entity)));
        }
        let max_alias_tokens = alias_lexicon
            .keys()
            .map(|k| k.split(' ').count())
            .max()
            .unwrap_or(0);

        let stopwords = if snap.stopwords.is_empty() {
            Stopwords::default()
        } else {
            Stopwords::from_lines(&snap.stopwords.join("\n"))
        };

        Ok(Corpus {
            entities,
            facts,
            facts_by_subject,
            facts_by_object,
            pages,
            alias_lexicon,
            link_dictionary,
            stopwords,
            max_alias_tokens,
        })
    }

    pub fn entity(&self, id: &EntityId) -> Option<&Entity> {
        self.entities.get(id)
    }

    pub fn entities(&self) -> impl Iterator<Item = &Entity> {
        self.entities.values()
    }

    pub fn fact(&self, fact_id: &str) -> Option<&KbFact> {
        self.facts.get(fact_id)
    }

    pub fn facts(&self) -> impl Iterator<Item = &KbFact> {
        self.facts.values()
    }

    pub fn page(&self, page_id: &str) -> Option<&WikiPage> {
        self.pages.get(page_id)
    }

    pub fn pages(&self) -> impl Iterator<Item = &WikiPage> {
        self.pages.values()
    }

    /// The page describing `id`, if any.
    pub fn page_of(&self, id: &EntityId) -> Option<&WikiPage> {
        self.entities
            .get(id)
            .and_then(|e| e.page_id.as_deref())
            .and_then(|p| self.pages.get(p))
    }

    pub fn stopwords(&self) -> &Stopwords {
        &self.stopwords
    }

    pub fn is_stopword(&self, lowered: &str) -> bool {
        self.stopwords.contains(lowered)
    }

    pub fn lexicon_lookup(&self, key: &str) -> &[LexiconEntry] {
        self.alias_lexicon.get(key).map_or(&[], Vec::as_slice)
    }

    pub fn lexicon(&self) -> &BTreeMap<String, Vec<LexiconEntry>> {
        &self.alias_lexicon
    }

    /// Facts with `id` as subject (by fact id), then facts with `id` as
    /// object or qualifier object (by fact id); each fact at most once.
    pub fn facts_for_entity(&self, id: &EntityId) -> Result<Vec<&KbFact>> {
        if !self.entities.contains_key(id) {
            return Err(Error::NotFound(format!("entity {id}")));
        }
        let subj = self.facts_by_subject.get(id).map_or(&[][..], Vec::as_slice);
        let obj = self.facts_by_object.get(id).map_or(&[][..], Vec::as_slice);
        let mut seen = BTreeSet::new();
        Ok(subj
            .iter()
            .chain(obj)
            .filter(|f| seen.insert(f.as_str()))
            .map(|f| &self.facts[f])
            .collect())
    }

    /// Exact-title lookup in the link dictionary.
    pub fn resolve_link(&self, page_title: &str) -> Option<&EntityId> {
        self.link_dictionary.get(page_title)
    }

    /// Longest-match, non-overlapping alias spans, scanned left to right.
    /// Spans made only of stopwords are ignored.
    pub fn match_mentions(&self, input: &str) -> Vec<MentionSpan> {
        let toks = text::tokens(input);
        let mut out = Vec::new();
        let mut i = 0;
        while i < toks.len() {
            let max = self.max_alias_tokens.min(toks.len() - i);
            let mut hit = None;
            for len in (1..=max).rev() {
                let window = &toks[i..i + len];
                if window.iter().all(|t| self.stopwords.contains(&t.lower)) {
                    continue;
                }
                let key = window.iter().map(|t| t.lower.as_str()).collect::<Vec<_>>().join(" ");
                if self.alias_lexicon.contains_key(&key) {
                    hit = Some((len, key));
                    break;
                }
            }
            match hit {
                Some((len, key)) => {
                    out.push(MentionSpan {
                        surface: input[toks[i].start..toks[i + len - 1].end].to_string(),
                        key,
                        start: i,
                        end: i + len,
                    });
                    i += len;
                }
                None => i += 1,
            }
        }
        out
    }

    pub fn counts(&self) -> CorpusCounts {
        CorpusCounts {
            entities: self.entities.len(),
            facts: self.facts.len(),
            pages: self.pages.len(),
            sentences: self.pages.values().map(|p| p.sentences.len()).sum(),
            table_rows: self
                .pages
                .values()
                .flat_map(|p| &p.tables)
                .map(|t| t.rows.len())
                .sum(),
            infobox_entries: self
                .pages
                .values()
                .filter_map(|p| p.infobox.as_ref())
                .map(|i| i.entries.len())
                .sum(),
            aliases: self.alias_lexicon.len(),
            links: self.link_dictionary.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorpusCounts {
    pub entities: usize,
    pub facts: usize,
    pub pages: usize,
    pub sentences: usize,
    pub table_rows: usize,
    pub infobox_entries: usize,
    pub aliases: usize,
    pub links: usize,
}
