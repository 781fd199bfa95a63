//! Shared fixtures and generators for integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use corpus_lens::dtm::{build_matrix, DocTermMatrix, Vocabulary};
use corpus_lens::textprep::{PreparedDocument, Token};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(path)
}

pub fn prepared(id: &str, words: &[String]) -> PreparedDocument {
    PreparedDocument {
        doc_id: id.to_string(),
        tokens: words.iter().map(|w| Token::new(w.as_str())).collect(),
    }
}

/// Letters-only pseudo word: `stem` plus a base-26 suffix.
pub fn word(stem: &str, i: usize) -> String {
    let mut suffix = Vec::new();
    let mut n = i;
    loop {
        suffix.push(b'a' + (n % 26) as u8);
        n /= 26;
        if n == 0 {
            break;
        }
    }
    suffix.reverse();
    format!("{stem}{}", String::from_utf8(suffix).unwrap())
}

pub const PLANTED_STEMS: [&str; 3] = ["river", "market", "temple"];
pub const PLANTED_WORDS: usize = 30;
pub const PLANTED_DOCS: usize = 60;
pub const PLANTED_DOC_LEN: usize = 80;
pub const PLANTED_PURITY: f64 = 0.85;

/// Planted vocabulary of one topic.
pub fn planted_vocabulary(topic: usize) -> Vec<String> {
    (0..PLANTED_WORDS).map(|i| word(PLANTED_STEMS[topic], i)).collect()
}

/// Three disjoint 30-word topics over 60 documents. Document `d` draws from
/// topic `d % 3` with probability 0.85 and from a uniformly chosen other
/// topic otherwise; within a topic word `i` has weight `1 / sqrt(i + 1)`.
pub fn planted_corpus(seed: u64) -> Vec<PreparedDocument> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..PLANTED_WORDS).map(|i| 1.0 / ((i + 1) as f64).sqrt()).collect();
    let total: f64 = weights.iter().sum();
    let vocabularies: Vec<Vec<String>> = (0..3).map(planted_vocabulary).collect();

    (0..PLANTED_DOCS)
        .map(|d| {
            let primary = d % 3;
            let words: Vec<String> = (0..PLANTED_DOC_LEN)
                .map(|_| {
                    let topic = if rng.random::<f64>() < PLANTED_PURITY {
                        primary
                    } else {
                        (primary + 1 + rng.random_range(0..2)) % 3
                    };
                    let mut u = rng.random::<f64>() * total;
                    let mut pick = PLANTED_WORDS - 1;
                    for (i, w) in weights.iter().enumerate() {
                        if u < *w {
                            pick = i;
                            break;
                        }
                        u -= w;
                    }
                    vocabularies[topic][pick].clone()
                })
                .collect();
            prepared(&format!("doc{d:02}"), &words)
        })
        .collect()
}

pub fn planted_matrix(seed: u64) -> (Vocabulary, DocTermMatrix) {
    build_matrix(&planted_corpus(seed)).unwrap()
}

/// Random corpus over `n_terms` pseudo words; term `common` appears in every
/// document.
pub fn random_corpus(seed: u64, n_docs: usize, n_terms: usize) -> Vec<PreparedDocument> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_docs)
        .map(|d| {
            let len = rng.random_range(20..60);
            let mut words: Vec<String> = (0..len)
                .map(|_| word("term", rng.random_range(0..n_terms)))
                .collect();
            words.push("common".to_string());
            prepared(&format!("d{d:02}"), &words)
        })
        .collect()
}

/// Two documents over disjoint ten-word vocabularies, `len` tokens each.
pub fn disjoint_pair(len: usize) -> Vec<PreparedDocument> {
    (0..2)
        .map(|d| {
            let words: Vec<String> = (0..len)
                .map(|i| word(["north", "south"][d], i % 10))
                .collect();
            prepared(&format!("half{d}"), &words)
        })
        .collect()
}
