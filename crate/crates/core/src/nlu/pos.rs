//! Heuristic part-of-speech tagging: closed-class lexicon first, then
//! suffix rules, then NOUN.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use super::token::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosTag {
    Verb,
    Noun,
    Adj,
    Adv,
    Pron,
    Det,
    Prep,
    Conj,
    Num,
    Other,
}

impl PosTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Verb => "VERB",
            PosTag::Noun => "NOUN",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Pron => "PRON",
            PosTag::Det => "DET",
            PosTag::Prep => "PREP",
            PosTag::Conj => "CONJ",
            PosTag::Num => "NUM",
            PosTag::Other => "OTHER",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub token: Token,
    pub tag: PosTag,
}

const PRONOUNS: &[&str] = &[
    "i", "me", "my", "mine", "we", "us", "our", "ours", "you", "your", "yours", "he", "him",
    "his", "she", "her", "hers", "it", "its", "they", "them", "their", "theirs", "myself",
    "yourself", "themselves", "itself", "who", "whom", "whose", "what", "which", "someone",
    "something", "everyone", "everything", "anyone", "anything", "nobody", "nothing",
];

const DETERMINERS: &[&str] = &[
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "each", "every", "no",
    "all", "both", "many", "much", "few", "several", "another", "other", "such",
];

const PREPOSITIONS: &[&str] = &[
    "to", "of", "in", "on", "at", "for", "with", "without", "from", "by", "about", "into",
    "onto", "over", "under", "between", "through", "during", "before", "after", "around",
    "against", "among", "per", "via", "within", "across", "towards", "toward", "near", "like",
    "than",
];

const CONJUNCTIONS: &[&str] = &[
    "and", "or", "but", "nor", "yet", "so", "because", "since", "although", "though", "while",
    "if", "unless", "when", "whenever", "where", "whether",
];

const ADVERBS: &[&str] = &[
    "not", "n't", "very", "too", "also", "just", "only", "really", "always", "never", "often",
    "sometimes", "usually", "here", "there", "now", "then", "still", "already", "again", "even",
    "more", "less", "most", "least", "quite", "almost", "maybe", "perhaps", "well", "actually",
];

const ADJECTIVES: &[&str] = &[
    "hard", "difficult", "easy", "high", "low", "cheap", "expensive", "long", "short", "fast",
    "slow", "good", "bad", "new", "old", "big", "small", "safe", "unsafe", "late", "early",
    "many", "few", "better", "worse", "cheaper", "faster", "available", "reliable",
];

// auxiliaries, modals and the content verbs founders use most when
// describing needs, difficulties and features
const VERBS: &[&str] = &[
    "is", "are", "was", "were", "be", "been", "being", "am", "'s", "'re", "'m", "'ve", "'d",
    "'ll", "do", "does", "did", "have", "has", "had", "can", "could", "will", "would",
    "shall", "should", "may", "might", "must", "want", "wants", "need", "needs", "use",
    "uses", "find", "finds", "book", "books", "take", "takes", "pay", "pays", "order",
    "orders", "get", "gets", "make", "makes", "go", "goes", "buy", "buys", "sell", "sells",
    "share", "shares", "track", "tracks", "see", "sees", "know", "knows", "allow", "allows",
    "let", "lets", "enable", "enables", "help", "helps", "attract", "attracts", "export",
    "exports", "import", "imports", "reach", "save", "saves", "spend", "spends", "wait",
    "waits", "struggle", "struggles", "face", "faces", "like", "likes", "split", "splits",
    "send", "sends", "receive", "receives", "manage", "manages", "plan", "plans", "schedule",
    "compare", "compares", "pick", "choose", "learn", "learns", "play", "plays", "meet",
    "contact", "call", "hire", "rent", "travel", "drive", "drives", "earn", "earns",
    "connect", "create", "creates", "organize", "keep", "avoid", "lose", "loses", "reduce",
    "reduces", "increase", "increases", "decrease", "decreases", "affect", "affects", "cook",
    "eat", "walk", "move", "visit", "check", "pay", "store", "access", "rate", "review",
    "search", "discover", "upload", "download", "write", "read", "post", "chat", "invite",
    "join", "park", "deliver", "cancel", "collaborate", "automate", "monitor", "measure",
];

const NUMBER_WORDS: &[&str] = &[
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "first",
    "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth", "last",
];

fn lexicon() -> &'static HashMap<&'static str, PosTag> {
    static LEXICON: OnceLock<HashMap<&'static str, PosTag>> = OnceLock::new();
    LEXICON.get_or_init(|| {
        // later groups win on overlap; verbs last since clause-initial verbs
        // are what the extractor needs to see
        let groups: [(&[&str], PosTag); 8] = [
            (NUMBER_WORDS, PosTag::Num),
            (ADJECTIVES, PosTag::Adj),
            (ADVERBS, PosTag::Adv),
            (CONJUNCTIONS, PosTag::Conj),
            (PREPOSITIONS, PosTag::Prep),
            (DETERMINERS, PosTag::Det),
            (PRONOUNS, PosTag::Pron),
            (VERBS, PosTag::Verb),
        ];
        let mut map = HashMap::new();
        for (words, tag) in groups {
            for w in words {
                map.insert(*w, tag);
            }
        }
        map
    })
}

/// Number of entries in the closed-class lexicon.
pub fn lexicon_size() -> usize {
    lexicon().len()
}

fn tag_word(lower: &str) -> PosTag {
    if let Some(tag) = lexicon().get(lower) {
        return *tag;
    }
    if !lower.chars().any(char::is_alphanumeric) {
        return PosTag::Other;
    }
    if lower.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',') {
        return PosTag::Num;
    }
    const SUFFIXES: [(&str, PosTag); 11] = [
        ("ing", PosTag::Verb),
        ("ed", PosTag::Verb),
        ("ly", PosTag::Adv),
        ("tion", PosTag::Noun),
        ("ness", PosTag::Noun),
        ("ity", PosTag::Noun),
        ("ment", PosTag::Noun),
        ("ous", PosTag::Adj),
        ("ful", PosTag::Adj),
        ("ive", PosTag::Adj),
        ("able", PosTag::Adj),
    ];
    SUFFIXES
        .iter()
        .find(|(suffix, _)| lower.len() > suffix.len() + 2 && lower.ends_with(suffix))
        .map_or(PosTag::Noun, |(_, tag)| *tag)
}

pub fn pos_tag(tokens: &[Token]) -> Vec<TaggedToken> {
    tokens
        .iter()
        .map(|t| TaggedToken { tag: tag_word(&t.lower), token: t.clone() })
        .collect()
}
