//! Utterance understanding scoped by the dialogue state.
//!
//! Resolution order for [`Nlu::classify`]:
//!
//! 1. control lexicons (yes / no / help / stop), confidence 1.0;
//! 2. polarity lexicons, when a polarity answer is admissible;
//! 3. extraction patterns, when the state admits a single content intent or
//!    exactly the desire/difficulty pair, or when the matching pattern itself
//!    signals an admissible intent ("the app allows users to ..." is a
//!    feature);
//! 4. the naive Bayes model restricted to the admissible intents. A best
//!    posterior under the clarification threshold turns into a help request.
//!    Stop is only ever recognized by the lexicon.

mod classifier;
mod corpus;
mod eval;
mod extract;
mod intent;
mod pos;
mod token;

use serde::Serialize;
use thiserror::Error;

pub use classifier::{features, train, ClassifierModel, TrainError};
pub use corpus::{Corpus, CorpusError, LabeledUtterance, SEED_CORPUS};
pub use eval::{evaluate, fold_of, EvalError, IntentScores, Metrics};
pub use extract::{clause_form_of, extract_clause, Clause, ExtractError, Extraction};
pub use intent::{IntentKind, IntentSet};
pub use pos::{lexicon_size, pos_tag, PosTag, TaggedToken};
pub use token::{normalize, tokenize, Token};

use crate::map::{ClauseForm, ClauseKind, Polarity};

pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParseResult {
    pub intent: IntentKind,
    /// In `[0, 1]`.
    pub confidence: f64,
    /// Present exactly for content intents.
    pub clause: Option<Clause>,
    /// Present exactly for polarity answers.
    pub polarity: Option<Polarity>,
    pub matched_rule: Option<&'static str>,
}

impl ParseResult {
    fn control(intent: IntentKind, rule: &'static str) -> Self {
        Self { intent, confidence: 1.0, clause: None, polarity: None, matched_rule: Some(rule) }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the admissible intent set is empty")]
    EmptyAdmissibleSet,
}

const AFFIRM: &[&str] = &[
    "yes", "y", "yeah", "yep", "yup", "sure", "of course", "ok", "okay", "correct", "right",
    "indeed", "absolutely", "definitely", "yes please", "i do", "there is", "yes there is",
    "yes there are", "please", "certainly", "why not", "go on", "one more", "yes one more", "i think so",
];
// an answer opening with one of these is a yes/no whatever follows
const AFFIRM_LEADS: &[&str] = &["yes", "yeah", "yep", "sure"];
const DENY_LEADS: &[&str] = &["no", "nope", "nah"];
const DENY: &[&str] = &[
    "no", "n", "nope", "nah", "no more", "none", "not really", "that's all", "that is all",
    "nothing else", "no thanks", "i don't think so", "no there isn't", "not at all", "that's it",
    "no that's all", "no i'm done", "no more customers", "no more problems", "no more features",
    "not now", "there isn't", "there is not", "i don't", "no need",
];
const HELP: &[&str] = &[
    "help", "help me", "i need help", "what do you mean", "what does that mean", "explain",
    "can you explain", "pardon", "sorry", "huh", "what", "i don't understand",
    "i do not understand", "i don't get it", "can you rephrase", "example", "give me an example",
    "i'm confused", "i am confused", "what should i say", "what should i answer",
];
const HELP_PHRASES: &[&str] = &[
    "what do you mean", "don't understand", "do not understand", "what does that mean",
    "can you explain", "not sure what you mean", "don't get it", "rephrase", "what should i",
];
const STOP: &[&str] = &[
    "stop", "quit", "exit", "bye", "goodbye", "end", "cancel", "let's stop", "i want to stop",
    "stop the interview", "end the interview", "finish", "i'm done", "i am done", "enough",
    "that's enough",
];
const STOP_PHRASES: &[&str] = &[
    "let's stop", "i want to stop", "let's finish", "stop here", "finish here",
    "end the interview", "end this", "stop the interview", "quit the interview", "i want to quit",
    "can we stop",
];

/// Lowercased, commas dropped, trailing `.!?` removed, whitespace collapsed.
fn control_key(text: &str) -> String {
    let lower = text.to_lowercase().replace(',', " ").replace('\u{2019}', "'");
    lower
        .trim()
        .trim_end_matches(['.', '!', '?', ' '])
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

fn control_intent(text: &str, allowed: &IntentSet) -> Option<ParseResult> {
    let key = control_key(text);
    if key.is_empty() {
        // bare punctuation such as "?" or "..."
        return Some(ParseResult::control(IntentKind::HelpRequest, "control_help"));
    }
    if HELP.contains(&key.as_str()) || HELP_PHRASES.iter().any(|p| key.contains(p)) {
        return Some(ParseResult::control(IntentKind::HelpRequest, "control_help"));
    }
    if STOP.contains(&key.as_str()) || STOP_PHRASES.iter().any(|p| key.contains(p)) {
        return Some(ParseResult::control(IntentKind::Stop, "control_stop"));
    }
    // "no effect" is a polarity, not a deny
    let polarity = allowed.contains(&IntentKind::PolarityAnswer) && polarity_from_text(text).is_some();
    let lead = if polarity { "" } else { key.split(' ').next().unwrap_or_default() };
    if allowed.contains(&IntentKind::Affirm)
        && (AFFIRM.contains(&key.as_str()) || AFFIRM_LEADS.contains(&lead))
    {
        return Some(ParseResult::control(IntentKind::Affirm, "control_affirm"));
    }
    if allowed.contains(&IntentKind::Deny)
        && (DENY.contains(&key.as_str()) || DENY_LEADS.contains(&lead))
    {
        return Some(ParseResult::control(IntentKind::Deny, "control_deny"));
    }
    None
}

const NEUTRAL_PHRASES: &[&str] = &[
    "/o/", "no effect", "does not affect", "doesn't affect", "do not affect", "don't affect",
    "not affect", "no impact", "no change", "doesn't change", "does not change", "neutral",
    "nothing", "none", "no difference", "doesn't matter", "neither",
];
const INCREASE_WORDS: &[&str] = &[
    "+", "positive", "positively", "increase", "increases", "increasing", "more", "plus", "up",
    "higher", "raise", "raises", "improve", "improves", "boost", "boosts", "grow", "grows",
];
const DECREASE_WORDS: &[&str] = &[
    "-", "negative", "negatively", "decrease", "decreases", "decreasing", "reduce", "reduces",
    "reducing", "less", "lower", "lowers", "down", "minus", "fewer", "cut", "cuts", "lessen",
    "lessens", "diminish", "diminishes",
];
const POLARITY_FILLER: &[&str] = &[
    "it", "that", "this", "them", "they", "would", "will", "i", "think", "probably", "definitely",
    "surely", "certainly", "a", "an", "the", "lot", "bit", "little", "of", "course", "clearly",
    "should", "does", "do", "is", "'s", "so", "very", "much", "way", "really", "by", "maybe",
    "guess", "believe", "most", "likely", "rather", "just", "mostly", "slightly", "strongly",
    "effect", "impact", "has", "have", "an", "association", "relation", "relationship", "for",
    "sure", "it'll", "'ll", "be", "one", "yes", "kind", "sort", "quite", "significantly",
    "greatly", "considerably", "somewhat", "on", "in", "my", "opinion", "view", "overall",
];

/// Polarity named by a short answer such as "it decreases it", "+" or
/// "no effect". Anything that mixes polarities or carries other content
/// yields `None`.
pub fn polarity_from_text(text: &str) -> Option<Polarity> {
    let lower = text.trim().to_lowercase().replace('\u{2019}', "'");
    let lower = lower.trim_end_matches(['.', '!']);
    match lower {
        "+" => return Some(Polarity::Increase),
        "-" | "\u{2212}" => return Some(Polarity::Decrease),
        "o" | "/o/" | "0" => return Some(Polarity::Neutral),
        _ => {}
    }
    let mut rest = format!(" {lower} ");
    let mut neutral = false;
    for phrase in NEUTRAL_PHRASES {
        let padded = format!(" {phrase} ");
        if rest.contains(&padded) {
            neutral = true;
            rest = rest.replace(&padded, " ");
        }
    }
    let (mut up, mut down) = (false, false);
    for token in tokenize(&rest) {
        let word = token.lower.as_str();
        if INCREASE_WORDS.contains(&word) {
            up = true;
        } else if DECREASE_WORDS.contains(&word) {
            down = true;
        } else if !POLARITY_FILLER.contains(&word) && token.is_word() {
            return None;
        }
    }
    match (up, down, neutral) {
        (true, false, false) => Some(Polarity::Increase),
        (false, true, false) => Some(Polarity::Decrease),
        (false, false, true) => Some(Polarity::Neutral),
        _ => None,
    }
}

/// The trained statistical model plus the rule layers around it.
#[derive(Debug, Clone)]
pub struct Nlu {
    model: ClassifierModel,
}

impl Nlu {
    pub fn train(corpus: &[LabeledUtterance]) -> Result<Self, TrainError> {
        Ok(Self { model: train(corpus)? })
    }

    /// Parser trained on the bundled seed corpus.
    pub fn seed() -> Self {
        Self::train(&Corpus::seed().items).expect("seed corpus is non-empty")
    }

    pub fn model(&self) -> &ClassifierModel {
        &self.model
    }

    /// Resolves `text` to one of `admissible` (plus the always-admissible
    /// help and stop intents).
    pub fn classify(
        &self,
        text: &str,
        admissible: &IntentSet,
        threshold: f64,
    ) -> Result<ParseResult, ClassifyError> {
        if admissible.is_empty() {
            return Err(ClassifyError::EmptyAdmissibleSet);
        }
        let mut allowed = admissible.clone();
        allowed.insert(IntentKind::HelpRequest);
        allowed.insert(IntentKind::Stop);

        let norm = normalize(text);
        if norm.is_empty() {
            return Ok(ParseResult::control(IntentKind::HelpRequest, "empty"));
        }
        if let Some(result) = control_intent(&norm, &allowed) {
            return Ok(result);
        }
        if allowed.contains(&IntentKind::PolarityAnswer) {
            if let Some(polarity) = polarity_from_text(&norm) {
                return Ok(ParseResult {
                    intent: IntentKind::PolarityAnswer,
                    confidence: 1.0,
                    clause: None,
                    polarity: Some(polarity),
                    matched_rule: Some("polarity_lexicon"),
                });
            }
        }

        let extraction = extract_clause(&norm).ok();
        let content: Vec<IntentKind> = allowed.iter().copied().filter(|i| i.is_content()).collect();
        let problem_pair = [IntentKind::DesireDescription, IntentKind::DifficultyDescription];
        let scoped = match content.as_slice() {
            [only] => Some(*only),
            pair if pair == problem_pair => extraction.as_ref().map(|e| {
                match (e.kind, e.clause.form) {
                    (Some(ClauseKind::Desire), _) | (None, ClauseForm::VerbPhrase) => {
                        IntentKind::DesireDescription
                    }
                    (Some(ClauseKind::Difficulty), _) | (None, ClauseForm::NounPhrase) => {
                        IntentKind::DifficultyDescription
                    }
                }
            }),
            _ => None,
        };
        // a pattern that signals an admissible intent outranks the model
        let scoped = scoped.or_else(|| {
            extraction.as_ref().and_then(|e| e.implies).filter(|i| allowed.contains(i))
        });
        if let (Some(intent), Some(extraction)) = (scoped, &extraction) {
            let confidence = if extraction.rule.is_some() { 0.9 } else { 0.6 };
            return Ok(ParseResult {
                intent,
                confidence,
                clause: Some(extraction.clause.clone()),
                polarity: None,
                matched_rule: Some(extraction.rule.unwrap_or("fallback")),
            });
        }

        // stopping ends the interview, so it is never guessed statistically
        let mut candidates = allowed.clone();
        candidates.remove(&IntentKind::Stop);
        let posteriors = self.model.posteriors(&norm, &candidates);
        let low = |confidence: f64| ParseResult {
            intent: IntentKind::HelpRequest,
            confidence,
            clause: None,
            polarity: None,
            matched_rule: Some("low_confidence"),
        };
        let Some(&(best, confidence)) = posteriors.first() else {
            return Ok(low(0.0));
        };
        if confidence < threshold {
            return Ok(low(confidence));
        }
        if best == IntentKind::PolarityAnswer {
            // never guess a polarity: it flips the meaning of the hypothesis
            return Ok(ParseResult { matched_rule: Some("polarity_unresolved"), ..low(confidence) });
        }
        let clause = if best.is_content() { extraction.map(|e| e.clause) } else { None };
        Ok(ParseResult {
            intent: best,
            confidence,
            clause,
            polarity: None,
            matched_rule: Some("classifier"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(intents: &[IntentKind]) -> IntentSet {
        intents.iter().copied().collect()
    }

    #[test]
    fn control_words() {
        let nlu = Nlu::seed();
        let yes_no = set(&[IntentKind::Affirm, IntentKind::Deny]);
        let r = nlu.classify("yes", &yes_no, 0.5).unwrap();
        assert_eq!((r.intent, r.confidence), (IntentKind::Affirm, 1.0));
        assert_eq!(nlu.classify("No, that's all.", &yes_no, 0.5).unwrap().intent, IntentKind::Deny);
        for any in [set(&[IntentKind::ProductName]), IntentKind::all()] {
            assert_eq!(nlu.classify("what do you mean?", &any, 0.5).unwrap().intent, IntentKind::HelpRequest);
            assert_eq!(nlu.classify("help", &any, 0.5).unwrap().intent, IntentKind::HelpRequest);
            assert_eq!(nlu.classify("stop", &any, 0.5).unwrap().intent, IntentKind::Stop);
        }
        // "yes" is only a control word where it is admissible
        let r = nlu.classify("yes", &set(&[IntentKind::ProductName]), 0.5).unwrap();
        assert_eq!(r.intent, IntentKind::ProductName);
    }

    #[test]
    fn lead_words_and_polarity() {
        let nlu = Nlu::seed();
        let yes_no = set(&[IntentKind::Affirm, IntentKind::Deny]);
        assert_eq!(nlu.classify("yes I have another one", &yes_no, 0.5).unwrap().intent, IntentKind::Affirm);
        assert_eq!(nlu.classify("nope, we are done", &yes_no, 0.5).unwrap().intent, IntentKind::Deny);
        let polarity = set(&[IntentKind::PolarityAnswer, IntentKind::Deny]);
        let r = nlu.classify("no effect", &polarity, 0.5).unwrap();
        assert_eq!((r.intent, r.polarity), (IntentKind::PolarityAnswer, Some(Polarity::Neutral)));
    }

    #[test]
    fn patterns_outrank_the_model() {
        let nlu = Nlu::seed();
        let all = IntentKind::all();
        let r = nlu.classify("users struggle to split the bill", &all, 0.5).unwrap();
        assert_eq!((r.intent, r.matched_rule), (IntentKind::DifficultyDescription, Some("difficulty_struggle")));
        let r = nlu.classify("the app allows users to rate drivers", &all, 0.5).unwrap();
        assert_eq!(r.intent, IntentKind::FeatureDescription);
        assert_eq!(r.clause.unwrap().text, "rate drivers");
        // a pattern whose intent is not admissible does not decide
        let r = nlu.classify("they want to book a ride", &set(&[IntentKind::FeatureDescription]), 0.5).unwrap();
        assert_eq!(r.intent, IntentKind::FeatureDescription);
    }

    #[test]
    fn empty_admissible_set() {
        assert_eq!(
            Nlu::seed().classify("x", &IntentSet::new(), 0.5),
            Err(ClassifyError::EmptyAdmissibleSet)
        );
    }

    #[test]
    fn polarity_lexicon() {
        use Polarity::*;
        let cases = [
            ("+", Some(Increase)),
            ("-", Some(Decrease)),
            ("/o/", Some(Neutral)),
            ("decrease", Some(Decrease)),
            ("It decreases it", Some(Decrease)),
            ("it would probably reduce it a lot", Some(Decrease)),
            ("positive", Some(Increase)),
            ("it increases", Some(Increase)),
            ("no effect", Some(Neutral)),
            ("It does not affect it.", Some(Neutral)),
            ("nothing", Some(Neutral)),
            ("more or less", None),
            ("they want more rides", None),
            ("maybe", None),
        ];
        for (text, expected) in cases {
            assert_eq!(polarity_from_text(text), expected, "{text}");
        }
    }

    #[test]
    fn polarity_answers_resolve_or_clarify() {
        let nlu = Nlu::seed();
        let admissible = set(&[IntentKind::PolarityAnswer]);
        let r = nlu.classify("it reduces it", &admissible, 0.5).unwrap();
        assert_eq!((r.intent, r.polarity), (IntentKind::PolarityAnswer, Some(Polarity::Decrease)));
        let r = nlu.classify("bananas", &admissible, 0.5).unwrap();
        assert_eq!(r.intent, IntentKind::HelpRequest);
        assert_eq!(r.polarity, None);
    }

    #[test]
    fn problem_answers_by_clause_kind() {
        let nlu = Nlu::seed();
        let pair = set(&[IntentKind::DesireDescription, IntentKind::DifficultyDescription]);
        let r = nlu
            .classify("because it is hard to find a cab in some places", &pair, 0.5)
            .unwrap();
        assert_eq!(r.intent, IntentKind::DifficultyDescription);
        assert_eq!(r.clause.unwrap().text, "find a cab in some places");
        assert_eq!(r.confidence, 0.9);
        let r = nlu.classify("to book a ride", &pair, 0.5).unwrap();
        assert_eq!(r.intent, IntentKind::DesireDescription);
        // no pattern: the form decides
        let r = nlu.classify("long waiting times", &pair, 0.5).unwrap();
        assert_eq!((r.intent, r.confidence), (IntentKind::DifficultyDescription, 0.6));
        let r = nlu.classify("travel cheaply", &pair, 0.5).unwrap();
        assert_eq!(r.intent, IntentKind::DesireDescription);
    }

    #[test]
    fn state_decides_the_syntactic_collision() {
        let nlu = Nlu::seed();
        let r = nlu
            .classify("They want to attract people to play", &set(&[IntentKind::FeatureDescription]), 0.5)
            .unwrap();
        assert_eq!(r.intent, IntentKind::FeatureDescription);
        assert_eq!(r.clause.unwrap().text, "attract people to play");
    }

    #[test]
    fn zero_threshold_never_clarifies_on_confidence() {
        let nlu = Nlu::seed();
        let yes_no = set(&[IntentKind::Affirm, IntentKind::Deny]);
        for text in ["hmm", "purple elephants", "maybe later on"] {
            let r = nlu.classify(text, &yes_no, 0.0).unwrap();
            assert_ne!(r.matched_rule, Some("low_confidence"), "{text}");
        }
        let r = nlu.classify("purple elephants", &yes_no, 1.0).unwrap();
        assert_eq!(r.matched_rule, Some("low_confidence"));
    }
}
