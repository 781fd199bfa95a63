//! UMass topic coherence.
//!
//! For top terms `w_1 … w_M` in rank order,
//! `C = Σ_{i<j} ln((D(w_i, w_j) + 1) / D(w_j))`, where `D(w)` counts the
//! documents containing `w` and `D(w_i, w_j)` those containing both.
//! Higher (closer to zero) is more coherent.

use super::TopicSummary;
use crate::dtm::{DocTermMatrix, Vocabulary};
use crate::error::{Error, Result};

pub fn umass_coherence(
    summary: &TopicSummary,
    counts: &DocTermMatrix,
    vocab: &Vocabulary,
) -> Result<f64> {
    let postings = counts.term_documents();
    let mut docs: Vec<&[usize]> = Vec::with_capacity(summary.top_terms.len());
    for term in summary.terms() {
        let id = vocab
            .id(term)
            .ok_or_else(|| Error::UnknownTerm(term.to_string()))?;
        let p = postings.get(id).ok_or_else(|| {
            Error::DimensionMismatch("vocabulary larger than matrix".into())
        })?;
        if p.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "term `{term}` occurs in no document"
            )));
        }
        docs.push(p);
    }

    let mut score = 0.0;
    for j in 1..docs.len() {
        let dj = docs[j].len() as f64;
        for i in 0..j {
            let co = intersection_size(docs[i], docs[j]) as f64;
            score += ((co + 1.0) / dj).ln();
        }
    }
    Ok(score)
}

/// Average UMass score over a set of topics.
pub fn mean_coherence(
    summaries: &[TopicSummary],
    counts: &DocTermMatrix,
    vocab: &Vocabulary,
) -> Result<f64> {
    if summaries.is_empty() {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for s in summaries {
        total += umass_coherence(s, counts, vocab)?;
    }
    Ok(total / summaries.len() as f64)
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtm::build_matrix;
    use crate::textprep::{PreparedDocument, Token};
    use crate::topics::TermWeight;

    fn corpus(docs: &[&[&str]]) -> (Vocabulary, DocTermMatrix) {
        let docs: Vec<_> = docs
            .iter()
            .enumerate()
            .map(|(i, words)| PreparedDocument {
                doc_id: format!("d{i}"),
                tokens: words.iter().map(|w| Token::new(*w)).collect(),
            })
            .collect();
        build_matrix(&docs).unwrap()
    }

    fn topic(terms: &[&str]) -> TopicSummary {
        TopicSummary {
            topic_id: 0,
            top_terms: terms
                .iter()
                .map(|t| TermWeight { term: t.to_string(), weight: 1.0 })
                .collect(),
            label: None,
        }
    }

    #[test]
    fn always_co_occurring() {
        let (v, m) = corpus(&[&["a", "b"], &["a", "b"], &["b", "a", "a"]]);
        let c = umass_coherence(&topic(&["a", "b"]), &m, &v).unwrap();
        assert_eq!(c, (4.0f64 / 3.0).ln());
    }

    #[test]
    fn never_co_occurring() {
        let (v, m) = corpus(&[&["a"], &["b"], &["b"]]);
        let c = umass_coherence(&topic(&["a", "b"]), &m, &v).unwrap();
        assert_eq!(c, (1.0f64 / 2.0).ln());
        assert!(c < 0.0);
    }

    #[test]
    fn hand_computed_four_documents() {
        // D(x)=3 D(y)=2 D(z)=2, D(x,y)=2 D(x,z)=1 D(y,z)=1
        let (v, m) = corpus(&[&["x", "y"], &["x", "y", "z"], &["x"], &["z"]]);
        let c = umass_coherence(&topic(&["x", "y", "z"]), &m, &v).unwrap();
        let expected = (3.0f64 / 2.0).ln() + (2.0f64 / 2.0).ln() + (2.0f64 / 2.0).ln();
        assert!((c - expected).abs() < 1e-15, "{c} vs {expected}");
    }

    #[test]
    fn unknown_term() {
        let (v, m) = corpus(&[&["a"]]);
        assert!(matches!(
            umass_coherence(&topic(&["a", "nope"]), &m, &v),
            Err(Error::UnknownTerm(_))
        ));
    }

    #[test]
    fn single_term_scores_zero() {
        let (v, m) = corpus(&[&["a"]]);
        assert_eq!(umass_coherence(&topic(&["a"]), &m, &v).unwrap(), 0.0);
    }
}
