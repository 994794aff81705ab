//! Non-neural SR generator over the corpus alias lexicon.

use std::collections::HashSet;

use super::{ConversationHistory, StructuredRepresentation};
use crate::corpus::{Corpus, MentionSpan};
use crate::text;

fn lemma(noun: &str) -> String {
    if let Some(stem) = noun.strip_suffix("ies") {
        if stem.len() > 1 {
            return format!("{stem}y");
        }
    }
    if noun.len() > 3
        && noun.ends_with('s')
        && !noun.ends_with("ss")
        && !noun.ends_with("us")
        && !noun.ends_with("is")
    {
        return noun[..noun.len() - 1].to_string();
    }
    noun.to_string()
}

/// Interrogative lookup: who→human, when→date, where→location,
/// how many/how much→number, which/what NOUN→lemma of the head noun.
/// Anything else is left blank.
pub fn infer_answer_type(question: &str) -> String {
    let toks = text::tokenize(question);
    let sw = text::default_stopwords();
    for (i, tok) in toks.iter().enumerate() {
        let next = toks.get(i + 1).map(String::as_str);
        match tok.as_str() {
            "who" | "whom" => return "human".into(),
            "when" => return "date".into(),
            "where" => return "location".into(),
            "how" if matches!(next, Some("many" | "much")) => return "number".into(),
            "which" | "what" => {
                // head noun = last word of the non-stopword run after the wh-word
                let run: Vec<&String> = toks[i + 1..].iter().take_while(|t| !sw.contains(t)).collect();
                if let Some(head) = run.last() {
                    if head.chars().all(char::is_alphabetic) {
                        return lemma(head);
                    }
                }
            }
            _ => {}
        }
    }
    String::new()
}

fn mention_spans<'a>(corpus: &Corpus, texts: impl Iterator<Item = &'a str>) -> Vec<MentionSpan> {
    texts.flat_map(|t| corpus.match_mentions(t)).collect()
}

/// Builds an SR from lexicon matches:
/// - question entities: longest alias matches in the current question;
/// - context entities: uncovered matches of the most recent prior turn that
///   has any (answers before question), followed by uncovered matches of
///   the opening question, which usually names the conversation topic;
/// - when the question itself has no match, the context mentions move to
///   the question-entity slot and the context slot stays blank;
/// - predicate: remaining non-stopword question words, lowercased;
/// - answer type: [`infer_answer_type`].
pub fn heuristic_sr(history: &ConversationHistory, question: &str, corpus: &Corpus) -> StructuredRepresentation {
    let q_spans = corpus.match_mentions(question);
    let mut seen: HashSet<String> = q_spans.iter().map(|s| s.key.clone()).collect();

    let mut context = Vec::new();
    for turn in history.turns.iter().rev() {
        let answer_spans = mention_spans(corpus, turn.answers.iter().map(String::as_str));
        let spans = if answer_spans.iter().any(|s| !seen.contains(&s.key)) {
            answer_spans
        } else {
            corpus.match_mentions(&turn.question)
        };
        let fresh: Vec<MentionSpan> = spans.into_iter().filter(|s| !seen.contains(&s.key)).collect();
        if !fresh.is_empty() {
            for s in fresh {
                if seen.insert(s.key.clone()) {
                    context.push(s.surface);
                }
            }
            break;
        }
    }
    if let Some(first) = history.turns.first() {
        for s in corpus.match_mentions(&first.question) {
            if seen.insert(s.key.clone()) {
                context.push(s.surface);
            }
        }
    }

    let toks = text::tokens(question);
    let predicate = toks
        .iter()
        .enumerate()
        .filter(|(i, t)| {
            !corpus.is_stopword(&t.lower) && !q_spans.iter().any(|s| s.start <= *i && *i < s.end)
        })
        .map(|(_, t)| t.lower.as_str())
        .collect::<Vec<_>>()
        .join(" ");

    let question_entities: Vec<String> = q_spans.into_iter().map(|s| s.surface).collect();
    let (context_entities, question_entities) = if question_entities.is_empty() {
        (Vec::new(), context)
    } else {
        (context, question_entities)
    };
    StructuredRepresentation::new(
        context_entities,
        question_entities,
        predicate,
        infer_answer_type(question),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::mini_corpus;

    #[test]
    fn answer_type_table() {
        assert_eq!(infer_answer_type("Who played Jaime Lannister in GoT?"), "human");
        assert_eq!(infer_answer_type("Where did Dany and Jon first meet?"), "location");
        assert_eq!(infer_answer_type("When was he born?"), "date");
        assert_eq!(infer_answer_type("How many goals did he score?"), "number");
        assert_eq!(infer_answer_type("How much did it cost?"), "number");
        assert_eq!(infer_answer_type("What year did they break up?"), "year");
        assert_eq!(infer_answer_type("Which national team does he play for?"), "team");
        assert_eq!(infer_answer_type("Which awards did it win?"), "award");
        assert_eq!(infer_answer_type("What about the dwarf?"), "");
        assert_eq!(infer_answer_type("Is it raining?"), "");
        assert_eq!(infer_answer_type("How old is he?"), "");
    }

    #[test]
    fn pronoun_follow_up_uses_previous_answer() {
        let corpus = mini_corpus();
        let mut h = ConversationHistory::new();
        h.push("Which actor won the Emmy?", vec!["Peter Dinklage".into()]);
        let sr = heuristic_sr(&h, "When was he born?", &corpus);
        assert_eq!(sr.question_entities, ["Peter Dinklage"]);
        assert!(sr.context_entities.is_empty());
        assert_eq!(sr.predicate, "born");
        assert_eq!(sr.answer_type, "date");
    }

    #[test]
    fn no_match_no_history() {
        let corpus = mini_corpus();
        let sr = heuristic_sr(&ConversationHistory::new(), "Is it raining today?", &corpus);
        assert!(sr.context_entities.is_empty() && sr.question_entities.is_empty());
        assert_eq!(sr.predicate, "raining today");
        assert_eq!(sr.answer_type, "");
    }

    #[test]
    fn repeated_entity_stays_in_question_slot() {
        let corpus = mini_corpus();
        let mut h = ConversationHistory::new();
        h.push("Who played Jaime Lannister in GoT?", vec!["Nikolaj Coster-Waldau".into()]);
        let sr = heuristic_sr(&h, "Who created GoT?", &corpus);
        assert_eq!(sr.question_entities, ["GoT"]);
        assert!(!sr.context_entities.iter().any(|m| m == "GoT"));
        assert_eq!(sr.context_entities, ["Nikolaj Coster-Waldau", "Jaime Lannister"]);
        assert_eq!(sr.predicate, "created");
    }

    #[test]
    fn follow_up_without_mentions_takes_topic() {
        let corpus = mini_corpus();
        let mut h = ConversationHistory::new();
        h.push("Who played Jaime Lannister in GoT?", vec!["Nikolaj Coster-Waldau".into()]);
        h.push("When was he born?", vec!["30 July 1970".into()]);
        let sr = heuristic_sr(&h, "Release date of first season?", &corpus);
        // turn 1 has no lexicon match, so turn 0's answer is the recent context
        assert_eq!(sr.question_entities, ["Nikolaj Coster-Waldau", "Jaime Lannister", "GoT"]);
        assert_eq!(sr.predicate, "release date first season");
        assert_eq!(sr.answer_type, "");
    }

    #[test]
    fn predicate_excludes_stopwords_and_entity_tokens() {
        let corpus = mini_corpus();
        let sr = heuristic_sr(&ConversationHistory::new(), "Who played Jaime Lannister in GoT?", &corpus);
        assert_eq!(sr.question_entities, ["Jaime Lannister", "GoT"]);
        assert_eq!(sr.predicate, "played");
        for w in sr.predicate.split_whitespace() {
            assert!(!corpus.is_stopword(w));
        }
    }
}
