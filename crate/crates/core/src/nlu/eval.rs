//! k-fold cross-validation of the full parser.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use super::corpus::Corpus;
use super::intent::IntentKind;
use super::{Nlu, DEFAULT_THRESHOLD};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("need at least 2 folds, got {0}")]
    TooFewFolds(usize),
    #[error("corpus has {size} items, fewer than the {folds} folds requested")]
    CorpusTooSmall { size: usize, folds: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntentScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metrics {
    pub folds: usize,
    pub total: usize,
    pub correct: usize,
    pub accuracy: f64,
    pub macro_f1: f64,
    /// Items with a gold clause, and how many of those were extracted exactly.
    pub clause_total: usize,
    pub clause_exact: usize,
    pub clause_exact_match: f64,
    pub per_intent: BTreeMap<IntentKind, IntentScores>,
    /// gold intent -> predicted intent -> count
    pub confusion: BTreeMap<IntentKind, BTreeMap<IntentKind, usize>>,
}

/// FNV-1a, so fold membership does not depend on the platform or on the
/// standard library's hasher seed.
fn stable_hash(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn fold_of(text: &str, folds: usize) -> usize {
    (stable_hash(text) % folds as u64) as usize
}

/// Trains on k-1 folds, parses the held-out fold with every intent
/// admissible, and pools the predictions.
pub fn evaluate(corpus: &Corpus, folds: usize) -> Result<Metrics, EvalError> {
    if folds < 2 {
        return Err(EvalError::TooFewFolds(folds));
    }
    if corpus.len() < folds {
        return Err(EvalError::CorpusTooSmall { size: corpus.len(), folds });
    }
    let all = IntentKind::all();
    let mut confusion: BTreeMap<IntentKind, BTreeMap<IntentKind, usize>> = BTreeMap::new();
    let (mut correct, mut clause_total, mut clause_exact) = (0, 0, 0);

    for fold in 0..folds {
        let (test, train): (Vec<_>, Vec<_>) =
            corpus.items.iter().partition(|i| fold_of(&i.text, folds) == fold);
        if test.is_empty() || train.is_empty() {
            continue;
        }
        let train: Vec<_> = train.into_iter().cloned().collect();
        let nlu = Nlu::train(&train).expect("training split is non-empty");
        for item in test {
            let parsed = nlu
                .classify(&item.text, &all, DEFAULT_THRESHOLD)
                .expect("admissible set is non-empty");
            *confusion.entry(item.intent).or_default().entry(parsed.intent).or_default() += 1;
            if parsed.intent == item.intent {
                correct += 1;
            }
            if let Some(gold) = &item.clause {
                clause_total += 1;
                if parsed.clause.as_ref().is_some_and(|c| &c.text == gold) {
                    clause_exact += 1;
                }
            }
        }
    }

    let total: usize = confusion.values().flat_map(|row| row.values()).sum();
    let mut per_intent = BTreeMap::new();
    for intent in IntentKind::ALL {
        let tp = confusion.get(&intent).and_then(|r| r.get(&intent)).copied().unwrap_or(0);
        let support: usize = confusion.get(&intent).map_or(0, |r| r.values().sum());
        let predicted: usize = confusion.values().filter_map(|r| r.get(&intent)).sum();
        if support == 0 && predicted == 0 {
            continue;
        }
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let (precision, recall) = (ratio(tp, predicted), ratio(tp, support));
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        per_intent.insert(intent, IntentScores { precision, recall, f1, support });
    }
    let macro_f1 = if per_intent.is_empty() {
        0.0
    } else {
        per_intent.values().map(|s| s.f1).sum::<f64>() / per_intent.len() as f64
    };
    let rate = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };

    Ok(Metrics {
        folds,
        total,
        correct,
        accuracy: rate(correct, total),
        macro_f1,
        clause_total,
        clause_exact,
        clause_exact_match: rate(clause_exact, clause_total),
        per_intent,
        confusion,
    })
}

impl Metrics {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metrics serialize")
    }

    /// Plain-text confusion matrix, gold intents as rows.
    pub fn confusion_table(&self) -> String {
        let labels: Vec<IntentKind> = IntentKind::ALL
            .into_iter()
            .filter(|i| {
                self.confusion.contains_key(i) || self.confusion.values().any(|r| r.contains_key(i))
            })
            .collect();
        let short = |i: IntentKind| -> String { i.as_str().chars().take(8).collect() };
        let width = labels.iter().map(|l| l.as_str().len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:width$}", "gold \\ predicted");
        for l in &labels {
            write!(out, " {:>8}", short(*l)).unwrap();
        }
        out.push('\n');
        for gold in &labels {
            write!(out, "{:width$}", gold.as_str()).unwrap();
            for predicted in &labels {
                let n = self
                    .confusion
                    .get(gold)
                    .and_then(|r| r.get(predicted))
                    .copied()
                    .unwrap_or(0);
                write!(out, " {n:>8}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}
