//! A tiny in-memory corpus around the Game of Thrones running example.

use crate::corpus::snapshot::*;
use crate::corpus::Corpus;

fn entity(id: &str, label: &str, aliases: &[&str], types: &[(&str, u64)], page: Option<&str>) -> EntityRecord {
    EntityRecord {
        id: id.into(),
        label: label.into(),
        aliases: aliases.iter().map(|s| s.to_string()).collect(),
        types: types
            .iter()
            .map(|(l, f)| TypeRecord {
                label: l.to_string(),
                freq: *f,
            })
            .collect(),
        page_id: page.map(String::from),
    }
}

fn fact(id: &str, s: &str, p: &str, o: ObjectRecord, quals: &[(&str, ObjectRecord)]) -> FactRecord {
    FactRecord {
        fact_id: id.into(),
        subject: s.into(),
        predicate: p.into(),
        object: o,
        qualifiers: quals
            .iter()
            .map(|(p, o)| QualifierRecord {
                predicate: p.to_string(),
                object: o.clone(),
            })
            .collect(),
    }
}

fn anchor(surface: &str, target: &str) -> AnchorRecord {
    AnchorRecord {
        surface: surface.into(),
        target: target.into(),
    }
}

pub fn mini_snapshot() -> Snapshot {
    use ObjectRecord as O;
    Snapshot {
        entities: vec![
            entity("Q1", "Game of Thrones", &["GoT"], &[("television series", 50)], Some("p-got")),
            entity("Q2", "Nikolaj Coster-Waldau", &[], &[("human", 90)], None),
            entity("Q3", "Jaime Lannister", &["Jaime"], &[("fictional human", 30), ("GoT character", 5)], None),
            entity("Q4", "Peter Dinklage", &["Dinklage"], &[("human", 90)], Some("p-dinklage")),
            entity(
                "Q5",
                "Tyrion Lannister",
                &["Tyrion", "The Imp"],
                &[("GoT character", 5), ("fictional human", 30)],
                None,
            ),
            entity("Q6", "HBO", &[], &[("television network", 10)], None),
            entity("Q7", "Morristown", &[], &[("city", 20)], None),
        ],
        facts: vec![
            fact(
                "F1",
                "Q1",
                "cast member",
                O::entity("Q2"),
                &[("character role", O::entity("Q3"))],
            ),
            fact(
                "F2",
                "Q1",
                "cast member",
                O::entity("Q4"),
                &[("character role", O::entity("Q5"))],
            ),
            fact("F3", "Q1", "original broadcaster", O::entity("Q6"), &[]),
            fact("F4", "Q4", "date of birth", O::literal("11 June 1969"), &[]),
            fact("F5", "Q4", "place of birth", O::entity("Q7"), &[]),
            fact("F6", "Q1", "number of seasons", O::literal("8"), &[]),
        ],
        pages: vec![
            PageRecord {
                page_id: "p-got".into(),
                title: "Game of Thrones".into(),
                entity: "Q1".into(),
                sentences: vec![
                    "Game of Thrones is an American fantasy drama television series.".into(),
                    "The third and youngest Lannister sibling is the dwarf Tyrion (Peter Dinklage) (...)".into(),
                    "The series premiered on HBO on April 17, 2011.".into(),
                ],
                tables: vec![TableRecord {
                    caption: Some("Series overview".into()),
                    headers: vec!["Season".into(), "Episodes".into(), "First aired".into()],
                    rows: vec![
                        vec!["Season 1".into(), "10".into(), "April 17, 2011".into()],
                        vec!["Season 2".into(), "".into(), "April 1, 2012".into()],
                    ],
                }],
                infobox: vec![
                    InfoboxRecord {
                        attribute: "Running time".into(),
                        lines: vec!["50–82 minutes".into()],
                    },
                    InfoboxRecord {
                        attribute: "Production company".into(),
                        lines: vec!["Television 360".into(), "Startling Television".into()],
                    },
                    InfoboxRecord {
                        attribute: "Network".into(),
                        lines: vec!["HBO".into()],
                    },
                ],
                anchors: vec![
                    anchor("Tyrion", "Tyrion Lannister"),
                    anchor("Peter Dinklage", "Peter Dinklage"),
                    anchor("HBO", "HBO"),
                ],
            },
            PageRecord {
                page_id: "p-dinklage".into(),
                title: "Peter Dinklage".into(),
                entity: "Q4".into(),
                sentences: vec!["Peter Dinklage (born June 11, 1969) is an American actor.".into()],
                tables: vec![],
                infobox: vec![],
                anchors: vec![],
            },
        ],
        links: [
            ("Game of Thrones", "Q1"),
            ("Tyrion Lannister", "Q5"),
            ("Peter Dinklage", "Q4"),
            ("HBO", "Q6"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect(),
        stopwords: vec![],
    }
}

pub fn mini_corpus() -> Corpus {
    Corpus::from_snapshot(mini_snapshot()).expect("mini snapshot is valid")
}

/// The mini snapshot plus a popular "Dwarf" creature sharing the alias
/// "the dwarf" with Tyrion.
pub fn dwarf_snapshot() -> Snapshot {
    let mut snap = mini_snapshot();
    for e in &mut snap.entities {
        if e.id == "Q5" {
            e.aliases.push("the dwarf".into());
        }
    }
    snap.entities.push(entity("Q8", "Dwarf", &["the dwarf", "dwarves"], &[("mythical creature", 40)], None));
    for (i, work) in ["The Hobbit", "Snow White", "Norse mythology", "Warhammer", "Dungeons & Dragons", "The Witcher", "Discworld"]
        .iter()
        .enumerate()
    {
        snap.facts.push(fact(&format!("D{i}"), "Q8", "present in work", ObjectRecord::literal(work), &[]));
    }
    snap
}

/// The three-turn running example over [`dwarf_snapshot`].
pub fn running_conversation() -> crate::benchmark::Conversation {
    use crate::benchmark::{Conversation, Domain, GoldAnswer, Turn};
    let turn = |i: usize, q: &str, g: GoldAnswer| Turn {
        index: i,
        question: q.into(),
        gold_answers: vec![g],
        completed_question: None,
        paraphrase: None,
        question_entities: vec![],
        sources_used: vec![],
    };
    Conversation {
        conv_id: "c1".into(),
        domain: Domain::TvSeries,
        turns: vec![
            turn(0, "Who played Jaime Lannister in GoT?", GoldAnswer::entity("Nikolaj Coster-Waldau", "Q2")),
            turn(1, "What about the dwarf?", GoldAnswer::entity("Peter Dinklage", "Q4")),
            turn(2, "When was he born?", GoldAnswer::new("11 June 1969", None)),
        ],
    }
}
