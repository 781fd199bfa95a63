use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use super::{Pos, Token};
use crate::error::{Error, Result};

static BUNDLED_LEXICON: &str = include_str!("../../data/tagger_lexicon.tsv");

/// Function words: determiners, pronouns, prepositions, conjunctions,
/// auxiliaries and a few particles. Always tagged `OTHER`.
pub const CLOSED_CLASS_WORDS: &[&str] = &[
    "a", "about", "above", "across", "after", "against", "all", "along", "although", "am",
    "among", "an", "and", "another", "any", "anybody", "anyone", "anything", "are", "around",
    "as", "at", "be", "because", "been", "before", "behind", "being", "below", "beneath",
    "beside", "besides", "between", "beyond", "both", "but", "by", "can", "could", "did", "do",
    "does", "doing", "down", "during", "each", "either", "every", "everybody", "everyone",
    "everything", "except", "few", "for", "from", "had", "has", "have", "having", "he", "her",
    "hers", "herself", "him", "himself", "his", "how", "i", "if", "in", "inside", "into", "is",
    "it", "its", "itself", "like", "many", "may", "me", "might", "mine", "more", "most", "much",
    "must", "my", "myself", "neither", "no", "nobody", "none", "nor", "not", "nothing", "of",
    "off", "on", "once", "one", "onto", "or", "other", "others", "ought", "our", "ours",
    "ourselves", "out", "outside", "over", "per", "several", "shall", "she", "should", "since",
    "so", "some", "somebody", "someone", "something", "such", "than", "that", "the", "their",
    "theirs", "them", "themselves", "then", "there", "these", "they", "this", "those", "though",
    "through", "throughout", "till", "to", "toward", "towards", "under", "underneath",
    "unless", "until", "up", "upon", "us", "was", "we", "were", "what", "whatever", "when",
    "whenever", "where", "wherever", "whether", "which", "whichever", "while", "who",
    "whoever", "whom", "whose", "why", "will", "with", "within", "without", "would", "yet",
    "you", "your", "yours", "yourself", "yourselves", "don't", "doesn't", "didn't", "isn't",
    "aren't", "wasn't", "weren't", "can't", "won't", "wouldn't", "shouldn't", "couldn't",
    "i'm", "it's", "he's", "she's", "we're", "they're", "you're", "that's", "there's",
];

const ADJ_SUFFIXES: &[&str] = &["ous", "ful", "ive", "al"];

/// Deterministic rule tagger.
///
/// Lookup order: closed-class words, then the open-class lexicon, then
/// suffix rules (`-ly` ADV; `-ing`, `-ed` VERB; `-ous`, `-ful`, `-ive`,
/// `-al` ADJ), falling back to NOUN.
#[derive(Debug, Clone)]
pub struct Tagger {
    closed: HashMap<String, Pos>,
    lexicon: HashMap<String, Pos>,
}

impl Tagger {
    pub fn bundled() -> &'static Tagger {
        static TAGGER: OnceLock<Tagger> = OnceLock::new();
        TAGGER.get_or_init(|| {
            Tagger::with_lexicon_tsv(BUNDLED_LEXICON, Path::new("<bundled>"))
                .expect("bundled tagger lexicon is well formed")
        })
    }

    /// A tagger using only closed-class words and suffix rules.
    pub fn rules_only() -> Self {
        Tagger {
            closed: closed_class(),
            lexicon: HashMap::new(),
        }
    }

    /// Loads an open-class lexicon in `word<TAB>tag` form.
    pub fn from_lexicon_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::with_lexicon_tsv(&text, path)
    }

    fn with_lexicon_tsv(text: &str, path: &Path) -> Result<Self> {
        let mut lexicon = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message,
            };
            let (word, tag) = line
                .split_once('\t')
                .ok_or_else(|| parse_err("expected `word<TAB>tag`".into()))?;
            let pos: Pos = tag.trim().parse().map_err(parse_err)?;
            lexicon.insert(word.trim().to_lowercase(), pos);
        }
        Ok(Tagger {
            closed: closed_class(),
            lexicon,
        })
    }

    pub fn lexicon_len(&self) -> usize {
        self.lexicon.len()
    }

    pub fn tag_word(&self, word: &str) -> Pos {
        if let Some(&pos) = self.closed.get(word) {
            return pos;
        }
        if let Some(&pos) = self.lexicon.get(word) {
            return pos;
        }
        suffix_rule(word)
    }

    pub fn tag_all(&self, mut tokens: Vec<Token>) -> Vec<Token> {
        for t in &mut tokens {
            t.pos = self.tag_word(&t.normalized);
        }
        tokens
    }
}

fn closed_class() -> HashMap<String, Pos> {
    CLOSED_CLASS_WORDS
        .iter()
        .map(|w| (w.to_string(), Pos::Other))
        .collect()
}

fn has_suffix(word: &str, suffix: &str) -> bool {
    // Require a stem of at least two letters so "bed" or "sly" are not caught.
    word.ends_with(suffix) && word.chars().count() >= suffix.chars().count() + 2
}

fn suffix_rule(word: &str) -> Pos {
    if has_suffix(word, "ly") {
        Pos::Adv
    } else if has_suffix(word, "ing") || has_suffix(word, "ed") {
        Pos::Verb
    } else if ADJ_SUFFIXES.iter().any(|s| has_suffix(word, s)) {
        Pos::Adj
    } else {
        Pos::Noun
    }
}
