//! Tokenization, stop-word filtering and coarse part-of-speech tagging.
//!
//! The pipeline for one document is `tokenize → normalize_and_filter → pos_tag`,
//! wrapped up by [`prepare`].

mod stoplist;
mod tagger;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ingest::{Corpus, Document};

pub use stoplist::StopList;
pub use tagger::{Tagger, CLOSED_CLASS_WORDS};

/// Coarse part-of-speech tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 5] = [Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv, Pos::Other];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Other => "OTHER",
        }
    }

    /// Maps the one-letter suffix used by lexicon keys such as `serenity#n`.
    pub fn from_lexicon_suffix(s: &str) -> Option<Pos> {
        match s {
            "n" => Some(Pos::Noun),
            "v" => Some(Pos::Verb),
            "a" => Some(Pos::Adj),
            "r" => Some(Pos::Adv),
            _ => None,
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "NOUN" => Ok(Pos::Noun),
            "VERB" => Ok(Pos::Verb),
            "ADJ" => Ok(Pos::Adj),
            "ADV" => Ok(Pos::Adv),
            "OTHER" => Ok(Pos::Other),
            _ => Err(format!("unknown tag `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    /// Lowercase form; only letters and internal apostrophes.
    pub normalized: String,
    pub pos: Pos,
}

impl Token {
    pub fn new(surface: impl Into<String>) -> Self {
        let surface = surface.into();
        let normalized = lowercase_word(&surface);
        Token {
            surface,
            normalized,
            pos: Pos::Other,
        }
    }
}

/// A document after filtering and tagging.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreparedDocument {
    pub doc_id: String,
    pub tokens: Vec<Token>,
}

impl PreparedDocument {
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(|t| t.normalized.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreparedCorpus {
    pub label: String,
    pub documents: Vec<PreparedDocument>,
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn is_word_char(c: char) -> bool {
    c.is_alphabetic() || is_apostrophe(c)
}

// Lowercasing can expand a letter into a letter plus a combining mark
// (e.g. U+0130), so anything non-alphabetic it produces is dropped.
fn lowercase_word(surface: &str) -> String {
    surface
        .chars()
        .flat_map(char::to_lowercase)
        .filter(|&c| is_word_char(c))
        .map(|c| if is_apostrophe(c) { '\'' } else { c })
        .collect()
}

/// Splits text into word tokens.
///
/// Any character that is neither a letter nor an apostrophe separates tokens.
/// Leading and trailing apostrophes are stripped, so quotes never leak into
/// words while contractions like `don't` survive intact.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split(|c: char| !is_word_char(c))
        .map(|frag| frag.trim_matches(is_apostrophe))
        .filter(|frag| !frag.is_empty())
        .map(Token::new)
        .filter(|t| !t.normalized.is_empty())
        .collect()
}

/// Lowercases tokens and drops stop words and anything containing digits.
pub fn normalize_and_filter(tokens: Vec<Token>, stops: &StopList) -> Vec<Token> {
    tokens
        .into_iter()
        .map(|mut t| {
            t.normalized = lowercase_word(&t.normalized);
            t
        })
        .filter(|t| {
            !t.normalized.is_empty()
                && !t.normalized.chars().any(|c| c.is_numeric())
                && !stops.contains(&t.normalized)
        })
        .collect()
}

/// Tags every token with the bundled rule tagger.
pub fn pos_tag(tokens: Vec<Token>) -> Vec<Token> {
    Tagger::bundled().tag_all(tokens)
}

/// Full preparation of one document with the bundled tagger.
pub fn prepare(doc: &Document, stops: &StopList) -> PreparedDocument {
    prepare_with(doc, stops, Tagger::bundled())
}

pub fn prepare_with(doc: &Document, stops: &StopList, tagger: &Tagger) -> PreparedDocument {
    let tokens = normalize_and_filter(tokenize(&doc.raw_text), stops);
    PreparedDocument {
        doc_id: doc.id.clone(),
        tokens: tagger.tag_all(tokens),
    }
}

pub fn prepare_corpus(corpus: &Corpus, stops: &StopList, tagger: &Tagger) -> PreparedCorpus {
    PreparedCorpus {
        label: corpus.label.clone(),
        documents: corpus
            .documents
            .iter()
            .map(|d| prepare_with(d, stops, tagger))
            .collect(),
    }
}
