//! Resolving which listed problem a founder means: "2", "the second one",
//! or the first words of its label.

use crate::map::NodeId;

const ORDINALS: [&str; 10] = [
    "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth",
];
const CARDINALS: [&str; 10] = ["one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"];
const FILLER: [&str; 6] = ["the", "number", "option", "aspect", "problem", "no."];

fn clean(text: &str) -> String {
    text.trim()
        .trim_end_matches(['.', '!', '?', ' '])
        .trim_start_matches('#')
        .to_lowercase()
}

/// 1-based position named by `text`, if it is a pure index reference.
fn index_of(text: &str, choices: usize) -> Option<usize> {
    let mut words: Vec<&str> = text.split_whitespace().collect();
    while words.first().is_some_and(|w| FILLER.contains(w)) {
        words.remove(0);
    }
    if words.len() == 2 && words[1] == "one" {
        words.pop();
    }
    let [word] = words.as_slice() else {
        return None;
    };
    let word = word.trim_end_matches(['.', ')']);
    let digits = word.trim_end_matches(|c: char| c.is_ascii_alphabetic());
    if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
        return digits.parse().ok();
    }
    if word == "last" {
        return Some(choices);
    }
    ORDINALS
        .iter()
        .chain(CARDINALS.iter())
        .position(|w| *w == word)
        .map(|i| i % ORDINALS.len() + 1)
}

/// The choice `text` refers to, or `None` when it matches nothing or is
/// ambiguous.
pub fn resolve(text: &str, choices: &[(NodeId, String)]) -> Option<NodeId> {
    let wanted = clean(text);
    if wanted.is_empty() {
        return None;
    }
    if let Some(i) = index_of(&wanted, choices.len()) {
        return (1..=choices.len()).contains(&i).then(|| choices[i - 1].0.clone());
    }
    if let Some((id, _)) = choices.iter().find(|(_, label)| label.to_lowercase() == wanted) {
        return Some(id.clone());
    }
    let mut hits = choices.iter().filter(|(_, label)| label.to_lowercase().starts_with(&wanted));
    match (hits.next(), hits.next()) {
        (Some((id, _)), None) => Some(id.clone()),
        _ => None,
    }
}
