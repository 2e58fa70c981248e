//! Ordered surface patterns that pull the map-relevant clause out of an
//! answer. Patterns are anchored at the start of the normalized utterance
//! and matched case-insensitively on tokens; the first pattern that matches
//! wins, and the remainder of the utterance becomes the clause.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::intent::IntentKind;
use super::pos::{pos_tag, PosTag};
use super::token::{tokenize, Token};
use crate::map::{ClauseForm, ClauseKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub text: String,
    pub form: ClauseForm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    /// Desire or difficulty when a problem pattern matched.
    pub kind: Option<ClauseKind>,
    pub clause: Clause,
    /// Name of the matching pattern; `None` for the whole-text fallback.
    pub rule: Option<&'static str>,
    /// Intent the matching pattern signals, if any.
    pub implies: Option<IntentKind>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("the utterance is empty")]
    EmptyUtterance,
}

/// One slot of a pattern: a set of alternative word sequences.
#[derive(Clone, Copy)]
enum Slot {
    Req(&'static [&'static [&'static str]]),
    Opt(&'static [&'static [&'static str]]),
}

struct Rule {
    name: &'static str,
    slots: &'static [Slot],
    kind: Option<ClauseKind>,
    form: ClauseForm,
    /// The clause must open with a verb.
    verb_initial: bool,
    /// Intent this pattern signals on its own, whatever the dialogue state.
    implies: Option<IntentKind>,
}

use Slot::{Opt, Req};

const DESIRE_SUBJECTS: &[&[&str]] = &[
    &["they"], &["he"], &["she"], &["users"], &["customers"], &["people"], &["the", "users"],
    &["the", "customers"], &["i"], &["we"],
];
const WANT: &[&[&str]] = &[
    &["want"], &["wants"], &["would", "like"], &["'d", "like"], &["need"], &["needs"],
];
const TO: &[&[&str]] = &[&["to"]];
const IT: &[&[&str]] = &[&["it"]];
const COPULA: &[&[&str]] = &[&["'s"], &["is"], &["was"]];
const INTENSIFIERS: &[&[&str]] = &[&["very"], &["too"], &["really"], &["quite"], &["so"]];
const HARD: &[&[&str]] = &[&["hard"], &["difficult"]];
const FOR_SOMEONE: &[&[&str]] = &[
    &["for", "them"], &["for", "users"], &["for", "people"], &["for", "customers"],
];
const DIFFICULTY_SUBJECTS: &[&[&str]] = &[
    &["they"], &["users"], &["people"], &["customers"], &["the", "users"], &["the", "customers"],
];
const STRUGGLE: &[&[&str]] = &[
    &["struggle"], &["find", "it", "hard"], &["find", "it", "difficult"],
];
const FACE: &[&[&str]] = &[&["face"], &["have"], &["pay"]];
const THERE: &[&[&str]] = &[&["there"]];
const BE_EXIST: &[&[&str]] = &[&["is"], &["are"], &["'s"]];
const APP: &[&[&str]] = &[
    &["the", "app"], &["the", "product"], &["it"], &["the", "application"], &["the", "platform"],
];
const ALLOWS: &[&[&str]] = &[&["allows"], &["lets"], &["enables"]];
const WHOM: &[&[&str]] = &[&["the", "users"], &["the", "user"], &["them"], &["users"], &["people"]];
const USERS: &[&[&str]] = &[&["users"], &["the", "users"]];
const CAN: &[&[&str]] = &[&["can"]];
const NAMING: &[&[&str]] = &[
    &["it", "is", "called"], &["it", "'s", "called"], &["it", "is", "named"],
    &["the", "product", "is", "called"], &["the", "app", "is", "called"], &["we", "call", "it"],
    &["the", "name", "is"], &["the", "product", "name", "is"], &["our", "product", "is"],
    &["the", "product", "is"], &["we", "are", "building"], &["we", "'re", "building"],
];
const TARGETING: &[&[&str]] = &[
    &["we", "target"], &["it", "targets"], &["our", "customers", "are"],
    &["the", "customers", "are"], &["our", "users", "are"], &["mainly"], &["mostly"],
];

const RULES: &[Rule] = &[
    Rule {
        name: "desire_want",
        slots: &[Opt(DESIRE_SUBJECTS), Req(WANT), Req(TO)],
        kind: Some(ClauseKind::Desire),
        form: ClauseForm::VerbPhrase,
        verb_initial: false,
        implies: Some(IntentKind::DesireDescription),
    },
    Rule {
        name: "desire_to",
        slots: &[Req(TO)],
        kind: Some(ClauseKind::Desire),
        form: ClauseForm::VerbPhrase,
        verb_initial: true,
        implies: Some(IntentKind::DesireDescription),
    },
    Rule {
        name: "difficulty_hard",
        slots: &[Req(IT), Req(COPULA), Opt(INTENSIFIERS), Req(HARD), Opt(FOR_SOMEONE), Req(TO)],
        kind: Some(ClauseKind::Difficulty),
        form: ClauseForm::VerbPhrase,
        verb_initial: false,
        implies: Some(IntentKind::DifficultyDescription),
    },
    Rule {
        name: "difficulty_struggle",
        slots: &[Req(DIFFICULTY_SUBJECTS), Req(STRUGGLE), Req(TO)],
        kind: Some(ClauseKind::Difficulty),
        form: ClauseForm::VerbPhrase,
        verb_initial: false,
        implies: Some(IntentKind::DifficultyDescription),
    },
    Rule {
        name: "difficulty_face",
        slots: &[Req(DIFFICULTY_SUBJECTS), Req(FACE)],
        kind: Some(ClauseKind::Difficulty),
        form: ClauseForm::NounPhrase,
        verb_initial: false,
        implies: Some(IntentKind::DifficultyDescription),
    },
    Rule {
        name: "difficulty_there",
        slots: &[Req(THERE), Req(BE_EXIST)],
        kind: Some(ClauseKind::Difficulty),
        form: ClauseForm::NounPhrase,
        verb_initial: false,
        implies: Some(IntentKind::DifficultyDescription),
    },
    Rule {
        name: "feature_allows",
        slots: &[Req(APP), Req(ALLOWS), Opt(WHOM), Opt(TO)],
        kind: None,
        form: ClauseForm::VerbPhrase,
        verb_initial: false,
        implies: Some(IntentKind::FeatureDescription),
    },
    Rule {
        name: "feature_can",
        slots: &[Req(USERS), Req(CAN)],
        kind: None,
        form: ClauseForm::VerbPhrase,
        verb_initial: false,
        implies: Some(IntentKind::FeatureDescription),
    },
    Rule {
        name: "naming",
        slots: &[Req(NAMING)],
        kind: None,
        form: ClauseForm::NounPhrase,
        verb_initial: false,
        implies: Some(IntentKind::ProductName),
    },
    Rule {
        name: "targeting",
        slots: &[Req(TARGETING)],
        kind: None,
        form: ClauseForm::NounPhrase,
        verb_initial: false,
        implies: Some(IntentKind::CustomerDescription),
    },
];

/// Every way `slots` can match at `pos`, longest alternatives first.
fn match_slots(tokens: &[Token], pos: usize, slots: &[Slot], out: &mut Vec<usize>) {
    let Some((slot, rest)) = slots.split_first() else {
        out.push(pos);
        return;
    };
    let (alternatives, optional) = match slot {
        Req(a) => (*a, false),
        Opt(a) => (*a, true),
    };
    let mut sorted: Vec<&[&str]> = alternatives.to_vec();
    sorted.sort_by_key(|words| std::cmp::Reverse(words.len()));
    for words in sorted {
        let end = pos + words.len();
        let hit = end <= tokens.len()
            && tokens[pos..end].iter().zip(words).all(|(t, w)| t.lower == *w);
        if hit {
            match_slots(tokens, end, rest, out);
        }
    }
    if optional {
        match_slots(tokens, pos, rest, out);
    }
}

/// Span of `tokens[from..]` without trailing punctuation, if any word remains.
fn clause_span(tokens: &[Token], from: usize) -> Option<(usize, usize)> {
    let words = &tokens[from.min(tokens.len())..];
    let last = words.iter().rposition(Token::is_word)?;
    Some((words[0].start, words[last].end))
}

/// Form of a free-standing clause: verb phrase iff the first token that is
/// not a pronoun or determiner is a verb.
pub fn clause_form_of(tokens: &[Token]) -> ClauseForm {
    let head = pos_tag(tokens)
        .into_iter()
        .find(|t| t.token.is_word() && !matches!(t.tag, PosTag::Pron | PosTag::Det));
    match head {
        Some(t) if t.tag == PosTag::Verb => ClauseForm::VerbPhrase,
        _ => ClauseForm::NounPhrase,
    }
}

/// Extracts the clause from an already normalized utterance.
pub fn extract_clause(text: &str) -> Result<Extraction, ExtractError> {
    let text = text.trim();
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(ExtractError::EmptyUtterance);
    }

    for rule in RULES {
        let mut ends = Vec::new();
        match_slots(&tokens, 0, rule.slots, &mut ends);
        for end in ends {
            let Some((start, stop)) = clause_span(&tokens, end) else { continue };
            if rule.verb_initial {
                let first = pos_tag(&tokens[end..end + 1]);
                if first[0].tag != PosTag::Verb {
                    continue;
                }
            }
            return Ok(Extraction {
                kind: rule.kind,
                clause: Clause { text: text[start..stop].to_owned(), form: rule.form },
                rule: Some(rule.name),
                implies: rule.implies,
            });
        }
    }

    let (start, stop) = clause_span(&tokens, 0).unwrap_or((0, text.len()));
    Ok(Extraction {
        kind: None,
        clause: Clause { text: text[start..stop].to_owned(), form: clause_form_of(&tokens) },
        rule: None,
        implies: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nlu::normalize;

    fn extract(text: &str) -> (Option<ClauseKind>, String, ClauseForm, Option<&'static str>) {
        let e = extract_clause(&normalize(text)).unwrap();
        (e.kind, e.clause.text, e.clause.form, e.rule)
    }

    #[test]
    fn desires() {
        use ClauseForm::*;
        use ClauseKind::*;
        assert_eq!(extract("to book a ride"), (Some(Desire), "book a ride".into(), VerbPhrase, Some("desire_to")));
        assert_eq!(
            extract("They want to attract people to play"),
            (Some(Desire), "attract people to play".into(), VerbPhrase, Some("desire_want"))
        );
        assert_eq!(extract("they'd like to travel cheaply").1, "travel cheaply");
        assert_eq!(extract("Users need to get home safely.").1, "get home safely");
        assert_eq!(extract("want to take a ride").0, Some(Desire));
    }

    #[test]
    fn difficulties() {
        use ClauseForm::*;
        use ClauseKind::*;
        assert_eq!(
            extract("because it is hard to find a cab in some places"),
            (Some(Difficulty), "find a cab in some places".into(), VerbPhrase, Some("difficulty_hard"))
        );
        assert_eq!(extract("it was difficult to find a cab").1, "find a cab");
        assert_eq!(extract("It's really hard for them to pay in cash").1, "pay in cash");
        assert_eq!(
            extract("they face high costs for a ride"),
            (Some(Difficulty), "high costs for a ride".into(), NounPhrase, Some("difficulty_face"))
        );
        assert_eq!(extract("so, because they pay too much").1, "too much");
        assert_eq!(extract("users struggle to split the bill").1, "split the bill");
        assert_eq!(extract("there are no cabs at night").1, "no cabs at night");
    }

    #[test]
    fn features() {
        use ClauseForm::*;
        assert_eq!(
            extract("The app allows the users to export data"),
            (None, "export data".into(), VerbPhrase, Some("feature_allows"))
        );
        assert_eq!(extract("it lets people rate drivers").1, "rate drivers");
        assert_eq!(extract("users can track the car on a map").1, "track the car on a map");
    }

    #[test]
    fn fallback() {
        use ClauseForm::*;
        assert_eq!(extract("book a ride"), (None, "book a ride".into(), VerbPhrase, None));
        assert_eq!(extract("fare splitting"), (None, "fare splitting".into(), NounPhrase, None));
        assert_eq!(extract("the riders."), (None, "the riders".into(), NounPhrase, None));
        // "to" followed by a non-verb is not a desire
        assert_eq!(extract("to the airport").3, None);
        assert_eq!(extract("?").1, "?");
    }

    #[test]
    fn naming_and_targeting() {
        assert_eq!(extract("It is called Uber").1, "Uber");
        assert_eq!(extract("we target small restaurants").1, "small restaurants");
    }

    #[test]
    fn empty() {
        assert_eq!(extract_clause("  "), Err(ExtractError::EmptyUtterance));
    }
}
