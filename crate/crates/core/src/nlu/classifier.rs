//! Multinomial naive Bayes over bag-of-features, add-one smoothed.
//!
//! Features per utterance: lowercased word unigrams and bigrams, three-letter
//! word suffixes, POS-tag bigrams, and a few surface cues (which extraction
//! pattern fired, the clause form, a length bucket, whether the head noun
//! names people, and whether the answer starts capitalized).

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use super::corpus::LabeledUtterance;
use super::extract::extract_clause;
use super::intent::{IntentKind, IntentSet};
use super::pos::{pos_tag, PosTag, TaggedToken};
use super::token::{normalize, tokenize};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrainError {
    #[error("cannot train on an empty corpus")]
    EmptyCorpus,
}

#[derive(Debug, Clone, Default)]
struct ClassStats {
    documents: usize,
    feature_counts: HashMap<String, u64>,
    total_features: u64,
}

#[derive(Debug, Clone)]
pub struct ClassifierModel {
    classes: BTreeMap<IntentKind, ClassStats>,
    documents: usize,
    vocabulary: HashSet<String>,
}

const PEOPLE: &[&str] = &[
    "people", "person", "persons", "users", "user", "customers", "customer", "kids", "children",
    "parents", "families", "family", "students", "adults", "seniors", "couples", "friends",
    "clubs", "teams", "companies", "businesses", "shops", "stores", "restaurants", "schools",
    "patients", "doctors", "nurses", "women", "men", "tourists", "travelers", "travellers",
    "commuters", "employees", "staff", "freelancers", "artists", "musicians", "athletes",
];

/// The head noun of a bare noun phrase is taken to be the last word before
/// the first verb, preposition or conjunction that follows a noun.
fn head_word(tagged: &[TaggedToken]) -> Option<&str> {
    let mut head = None;
    for t in tagged.iter().filter(|t| t.token.is_word()) {
        match t.tag {
            PosTag::Verb | PosTag::Prep | PosTag::Conj if head.is_some() => break,
            PosTag::Noun => head = Some(t.token.lower.as_str()),
            _ => {}
        }
    }
    head
}

fn denotes_people(word: &str) -> bool {
    PEOPLE.contains(&word)
        || (word.len() > 5 && ["ers", "ors", "ists", "ians", "ents"].iter().any(|s| word.ends_with(s)))
}

pub fn features(text: &str) -> Vec<String> {
    let norm = normalize(text);
    let tokens = tokenize(&norm);
    let tagged = pos_tag(&tokens);
    let mut out = Vec::with_capacity(tokens.len() * 3 + 4);

    for t in &tokens {
        out.push(format!("w:{}", t.lower));
        let chars: Vec<char> = t.lower.chars().collect();
        if chars.len() > 4 {
            let suffix: String = chars[chars.len() - 3..].iter().collect();
            out.push(format!("s:{suffix}"));
        }
    }
    let mut previous = "<s>";
    for t in &tokens {
        out.push(format!("b:{previous}|{}", t.lower));
        previous = &t.lower;
    }
    out.push(format!("b:{previous}|</s>"));
    let mut previous = "<s>";
    for t in &tagged {
        out.push(format!("t:{previous}|{}", t.tag));
        previous = t.tag.as_str();
    }
    out.push(format!("t:{previous}|</s>"));

    if let Ok(extraction) = extract_clause(&norm) {
        out.push(format!("r:{}", extraction.rule.unwrap_or("fallback")));
        out.push(format!("f:{}", extraction.clause.form.code()));
    }
    let words = tokens.iter().filter(|t| t.is_word()).count();
    let bucket = match words {
        0 => "0",
        1 => "1",
        2 => "2",
        3..=4 => "3-4",
        _ => "5+",
    };
    out.push(format!("n:{bucket}"));
    if let Some(head) = head_word(&tagged) {
        out.push(if denotes_people(head) { "h:people" } else { "h:thing" }.to_owned());
    }
    if norm.chars().next().is_some_and(char::is_uppercase) {
        out.push("c:upper".to_owned());
    }
    out
}

pub fn train(corpus: &[LabeledUtterance]) -> Result<ClassifierModel, TrainError> {
    if corpus.is_empty() {
        return Err(TrainError::EmptyCorpus);
    }
    let mut classes: BTreeMap<IntentKind, ClassStats> = BTreeMap::new();
    let mut vocabulary = HashSet::new();
    for item in corpus {
        let stats = classes.entry(item.intent).or_default();
        stats.documents += 1;
        for f in features(&item.text) {
            *stats.feature_counts.entry(f.clone()).or_default() += 1;
            stats.total_features += 1;
            vocabulary.insert(f);
        }
    }
    Ok(ClassifierModel { classes, documents: corpus.len(), vocabulary })
}

impl ClassifierModel {
    /// Intents seen during training.
    pub fn classes(&self) -> impl Iterator<Item = IntentKind> + '_ {
        self.classes.keys().copied()
    }

    /// Unnormalized log joint probability of `text` under each class.
    fn log_scores(&self, feats: &[String], class: &ClassStats) -> f64 {
        let prior = (class.documents as f64 / self.documents as f64).ln();
        let denominator = (class.total_features + self.vocabulary.len() as u64) as f64;
        feats
            .iter()
            .filter(|f| self.vocabulary.contains(*f))
            .map(|f| {
                let count = class.feature_counts.get(f).copied().unwrap_or(0);
                ((count + 1) as f64 / denominator).ln()
            })
            .sum::<f64>()
            + prior
    }

    /// Posterior over the trained classes that are in `admissible`,
    /// renormalized to sum to one and sorted best first. Ties keep intent
    /// order.
    pub fn posteriors(&self, text: &str, admissible: &IntentSet) -> Vec<(IntentKind, f64)> {
        let feats = features(text);
        let scores: Vec<(IntentKind, f64)> = self
            .classes
            .iter()
            .filter(|(intent, _)| admissible.contains(intent))
            .map(|(intent, stats)| (*intent, self.log_scores(&feats, stats)))
            .collect();
        let Some(max) = scores.iter().map(|(_, s)| *s).reduce(f64::max) else {
            return Vec::new();
        };
        let total: f64 = scores.iter().map(|(_, s)| (s - max).exp()).sum();
        let mut out: Vec<(IntentKind, f64)> = scores
            .into_iter()
            .map(|(intent, s)| (intent, (s - max).exp() / total))
            .collect();
        out.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        out
    }
}
