//! Replay scripts: JSON Lines of founder utterances, one `{"text": ...}`
//! object per line. Blank lines are skipped.

use serde::Deserialize;
use thiserror::Error;

/// The Uber interview used in the examples and tests.
pub const UBER_SCRIPT: &str = include_str!("../../data/uber_script.jsonl");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("script line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Line {
    text: String,
}

pub fn parse_script(input: &str) -> Result<Vec<String>, ScriptError> {
    input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str::<Line>(l)
                .map(|line| line.text)
                .map_err(|e| ScriptError { line: i + 1, message: e.to_string() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_script() {
        let turns = parse_script(UBER_SCRIPT).unwrap();
        assert_eq!(turns.len(), 19);
        assert_eq!(turns[3], "it is hard to find a cab in some places");
        assert_eq!(turns, crate::dialogue::tests::UBER);
    }

    #[test]
    fn bad_lines() {
        assert_eq!(parse_script("\n{\"text\":\"a\"}\n\n").unwrap(), ["a"]);
        let err = parse_script("{\"text\":\"a\"}\n\"b\"").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_script("{\"text\":\"a\",\"speaker\":\"user\"}").is_err());
    }
}
