//! Turning facts, sentences, table rows and infobox entries into
//! comma-joined evidence strings with their mention metadata.

use super::{Evidence, EvidenceMention, Provenance};
use crate::corpus::{find_literals, normalize_literal, Corpus, KbFact, KbItem, KbObject, WikiPage};
use crate::error::{Error, Result};
use crate::source::Source;

fn object_surface(obj: &KbObject, corpus: &Corpus) -> String {
    match obj {
        KbObject::Entity(id) => corpus.entity(id).map_or_else(|| id.to_string(), |e| e.label.clone()),
        KbObject::Literal(l) => l.surface.trim().to_string(),
    }
}

#[derive(Default)]
struct Mentions(Vec<EvidenceMention>);

impl Mentions {
    fn push(&mut self, surface: &str, item: KbItem) {
        let surface = surface.trim();
        if surface.is_empty() || self.0.iter().any(|m| m.surface == surface && m.item == item) {
            return;
        }
        self.0.push(EvidenceMention {
            surface: surface.to_string(),
            item,
        });
    }

    fn title(&mut self, page: &WikiPage) {
        self.push(&page.title, KbItem::Entity(page.entity.clone()));
    }

    /// Anchors whose surface occurs verbatim in `text`.
    fn anchors(&mut self, page: &WikiPage, text: &str, corpus: &Corpus) -> bool {
        let mut whole = false;
        for a in &page.anchors {
            if a.surface.is_empty() || !text.contains(&a.surface) {
                continue;
            }
            if let Some(id) = corpus.resolve_link(&a.target) {
                self.push(&a.surface, KbItem::Entity(id.clone()));
                whole |= a.surface.trim() == text.trim();
            }
        }
        whole
    }

    fn literals_in(&mut self, text: &str) {
        for lit in find_literals(text) {
            self.push(&lit.surface, KbItem::literal(&lit));
        }
    }

    /// A cell or infobox line: anchors, embedded dates, and the whole value
    /// as a literal unless an anchor already covers it.
    fn value(&mut self, page: &WikiPage, value: &str, corpus: &Corpus) {
        if !self.anchors(page, value, corpus) {
            let lit = normalize_literal(value);
            self.push(value, KbItem::literal(&lit));
        }
        self.literals_in(value);
    }
}

/// `subject, predicate, object[, qualifier predicate, qualifier object]*`
pub fn verbalize_fact(fact: &KbFact, corpus: &Corpus) -> Evidence {
    let mut parts = Vec::with_capacity(3 + 2 * fact.qualifiers.len());
    let mut mentions = Mentions::default();
    let subject = corpus
        .entity(&fact.subject)
        .map_or_else(|| fact.subject.to_string(), |e| e.label.clone());
    mentions.push(&subject, KbItem::Entity(fact.subject.clone()));
    parts.push(subject);
    parts.push(fact.predicate.clone());
    for (pred, obj) in std::iter::once((None, &fact.object))
        .chain(fact.qualifiers.iter().map(|(p, o)| (Some(p), o)))
    {
        if let Some(p) = pred {
            parts.push(p.clone());
        }
        let surface = object_surface(obj, corpus);
        mentions.push(&surface, obj.item());
        parts.push(surface);
    }
    Evidence {
        evidence_id: format!("kb:{}", fact.fact_id),
        source: Source::Kb,
        text: parts.join(", "),
        mentions: mentions.0,
        anchor: None,
        provenance: Provenance::Fact {
            fact_id: fact.fact_id.clone(),
        },
    }
}

/// `title, sentence` for every sentence of the page.
pub fn sentence_evidences(page: &WikiPage, corpus: &Corpus) -> Vec<Evidence> {
    page.sentences
        .iter()
        .enumerate()
        .map(|(i, sentence)| {
            let mut mentions = Mentions::default();
            mentions.title(page);
            mentions.anchors(page, sentence, corpus);
            mentions.literals_in(sentence);
            Evidence {
                evidence_id: format!("text:{}:{i}", page.page_id),
                source: Source::Text,
                text: format!("{}, {sentence}", page.title),
                mentions: mentions.0,
                anchor: None,
                provenance: Provenance::Sentence {
                    page_id: page.page_id.clone(),
                    index: i,
                },
            }
        })
        .collect()
}

/// `title, header is cell, header is cell, ...`; empty cells are skipped and
/// the row ends with a period.
pub fn verbalize_table_row(page: &WikiPage, table: usize, row: usize, corpus: &Corpus) -> Result<Evidence> {
    let t = page
        .tables
        .get(table)
        .ok_or_else(|| Error::NotFound(format!("table {table} on page {}", page.page_id)))?;
    let cells = t
        .rows
        .get(row)
        .ok_or_else(|| Error::NotFound(format!("row {row} of table {table} on page {}", page.page_id)))?;
    let mut text = page.title.clone();
    let mut mentions = Mentions::default();
    mentions.title(page);
    for (header, cell) in t.headers.iter().zip(cells) {
        if cell.trim().is_empty() {
            continue;
        }
        text.push_str(&format!(", {header} is {cell}"));
        mentions.value(page, cell, corpus);
    }
    text.push('.');
    Ok(Evidence {
        evidence_id: format!("table:{}:{table}:{row}", page.page_id),
        source: Source::Table,
        text,
        mentions: mentions.0,
        anchor: None,
        provenance: Provenance::TableRow {
            page_id: page.page_id.clone(),
            table,
            row,
        },
    })
}

/// `title, attribute, line, line, ...`
pub fn verbalize_infobox_entry(page: &WikiPage, attribute: &str, corpus: &Corpus) -> Result<Evidence> {
    let lines = page
        .infobox
        .as_ref()
        .and_then(|ib| ib.lines(attribute))
        .ok_or_else(|| Error::NotFound(format!("infobox attribute {attribute:?} on page {}", page.page_id)))?;
    let mut mentions = Mentions::default();
    mentions.title(page);
    for line in lines {
        mentions.value(page, line, corpus);
    }
    let mut parts = vec![page.title.as_str(), attribute];
    parts.extend(lines.iter().map(String::as_str));
    Ok(Evidence {
        evidence_id: format!("info:{}:{attribute}", page.page_id),
        source: Source::Info,
        text: parts.join(", "),
        mentions: mentions.0,
        anchor: None,
        provenance: Provenance::Infobox {
            page_id: page.page_id.clone(),
            attribute: attribute.to_string(),
        },
    })
}

/// Every evidence a page yields, restricted to the sources in `mask`.
pub(crate) fn page_evidences(page: &WikiPage, corpus: &Corpus, mask: crate::source::SourceMask) -> Vec<Evidence> {
    let mut out = Vec::new();
    if mask.contains(Source::Text) {
        out.extend(sentence_evidences(page, corpus));
    }
    if mask.contains(Source::Table) {
        for (ti, t) in page.tables.iter().enumerate() {
            for ri in 0..t.rows.len() {
                out.extend(verbalize_table_row(page, ti, ri, corpus));
            }
        }
    }
    if mask.contains(Source::Info) {
        if let Some(ib) = &page.infobox {
            for (attr, _) in &ib.entries {
                out.extend(verbalize_infobox_entry(page, attr, corpus));
            }
        }
    }
    out
}
