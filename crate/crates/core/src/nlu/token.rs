/// A word or punctuation mark with its byte span in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    /// Lowercased `text`.
    pub lower: String,
    pub start: usize,
    pub end: usize,
}

impl Token {
    fn new(source: &str, start: usize, end: usize) -> Self {
        let text = source[start..end].to_owned();
        let lower = text.to_lowercase();
        Self { text, lower, start, end }
    }

    pub fn is_word(&self) -> bool {
        self.text.chars().any(char::is_alphanumeric)
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Splits on whitespace and punctuation. Clitics become their own tokens
/// (`it's` -> `it`, `'s`; `don't` -> `do`, `n't`) and every other
/// punctuation character is a single token. Hyphens and periods between
/// two word characters stay inside the word (`e-mail`, `v2.0`).
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let end_of = |i: usize| chars.get(i).map_or(text.len(), |(b, _)| *b);
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (start, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if is_word_char(c) {
            let mut j = i + 1;
            while j < chars.len() {
                let c = chars[j].1;
                let joins = matches!(c, '-' | '.' | '_')
                    && chars.get(j + 1).is_some_and(|(_, n)| is_word_char(*n));
                if is_word_char(c) || joins {
                    j += 1;
                } else {
                    break;
                }
            }
            // "don't": the word keeps "do", the clitic is "n't"
            let followed_by_nt = chars.get(j).is_some_and(|(_, a)| is_apostrophe(*a))
                && chars.get(j + 1).is_some_and(|(_, t)| *t == 't' || *t == 'T')
                && !chars.get(j + 2).is_some_and(|(_, c)| is_word_char(*c))
                && j >= i + 2
                && matches!(chars[j - 1].1, 'n' | 'N');
            if followed_by_nt {
                tokens.push(Token::new(text, start, end_of(j - 1)));
                tokens.push(Token::new(text, end_of(j - 1), end_of(j + 2)));
                i = j + 2;
            } else {
                tokens.push(Token::new(text, start, end_of(j)));
                i = j;
            }
        } else if is_apostrophe(c) && chars.get(i + 1).is_some_and(|(_, n)| n.is_alphabetic()) {
            let mut j = i + 1;
            while j < chars.len() && chars[j].1.is_alphabetic() {
                j += 1;
            }
            tokens.push(Token::new(text, start, end_of(j)));
            i = j;
        } else {
            tokens.push(Token::new(text, start, end_of(i + 1)));
            i += 1;
        }
    }
    tokens
}

const DISCOURSE_MARKERS: [&str; 6] = ["because", "since", "well", "so", "actually", ","];

/// Trims, collapses runs of whitespace and strips leading discourse markers
/// ("because", "so,", "well", ...) until none is left.
pub fn normalize(text: &str) -> String {
    let mut out = text.split_whitespace().collect::<Vec<_>>().join(" ");
    loop {
        let first = tokenize(&out).into_iter().next();
        let Some(first) = first else { break };
        if first.start != 0 || !DISCOURSE_MARKERS.contains(&first.lower.as_str()) {
            break;
        }
        out = out[first.end..].trim_start().to_owned();
    }
    out
}
