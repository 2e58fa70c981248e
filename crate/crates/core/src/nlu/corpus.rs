//! Labelled example utterances, stored as JSON Lines:
//!
//! ```text
//! {"text":"to book a ride","intent":"desire_description","clause":"book a ride","clause_form":"vp"}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::intent::IntentKind;
use super::token::normalize;
use crate::map::ClauseForm;

/// Seed corpus bundled with the crate.
pub const SEED_CORPUS: &str = include_str!("../../data/seed_corpus.jsonl");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledUtterance {
    pub text: String,
    pub intent: IntentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause_form: Option<ClauseForm>,
}

#[derive(Debug, Error)]
#[error("corpus line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub items: Vec<LabeledUtterance>,
}

impl Corpus {
    /// Parses JSON Lines; blank lines and lines starting with `#` are skipped.
    pub fn from_jsonl(input: &str) -> Result<Self, CorpusError> {
        let mut items = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let item: LabeledUtterance = serde_json::from_str(trimmed)
                .map_err(|e| CorpusError { line: line_no, message: e.to_string() })?;
            if let Some(clause) = &item.clause {
                if clause.trim().is_empty() || !normalize(&item.text).contains(clause.as_str()) {
                    return Err(CorpusError {
                        line: line_no,
                        message: format!("clause {clause:?} is not part of the normalized text"),
                    });
                }
            }
            items.push(item);
        }
        Ok(Self { items })
    }

    pub fn seed() -> Self {
        Self::from_jsonl(SEED_CORPUS).expect("bundled corpus is well-formed")
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn to_jsonl(&self) -> String {
        self.items
            .iter()
            .map(|i| serde_json::to_string(i).expect("serializable") + "\n")
            .collect()
    }
}
