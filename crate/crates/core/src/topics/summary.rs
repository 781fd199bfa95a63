use serde::{Deserialize, Serialize};

use super::TopicModel;
use crate::dtm::Vocabulary;
use crate::error::{Error, Result};

pub const DEFAULT_TOP_TERMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermWeight {
    pub term: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicSummary {
    pub topic_id: usize,
    /// Highest-weight terms first; equal weights ordered by term.
    pub top_terms: Vec<TermWeight>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TopicSummary {
    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.top_terms.iter().map(|t| t.term.as_str())
    }
}

pub fn top_terms<M: TopicModel + ?Sized>(
    model: &M,
    vocab: &Vocabulary,
    topic_id: usize,
    k_top: usize,
) -> Result<TopicSummary> {
    if topic_id >= model.n_topics() {
        return Err(Error::InvalidParameter(format!(
            "topic {topic_id} out of range for {} topics",
            model.n_topics()
        )));
    }
    if vocab.len() != model.n_terms() {
        return Err(Error::DimensionMismatch(format!(
            "vocabulary has {} terms, model has {}",
            vocab.len(),
            model.n_terms()
        )));
    }
    let weights = model.term_weights(topic_id);
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        weights[b]
            .total_cmp(&weights[a])
            .then_with(|| vocab.term(a).cmp(vocab.term(b)))
    });
    let top_terms = order
        .into_iter()
        .take(k_top)
        .map(|t| TermWeight {
            term: vocab.term(t).to_string(),
            weight: weights[t],
        })
        .collect();
    Ok(TopicSummary {
        topic_id,
        top_terms,
        label: None,
    })
}

/// Top terms for every topic of a model.
pub fn summarize<M: TopicModel + ?Sized>(
    model: &M,
    vocab: &Vocabulary,
    k_top: usize,
) -> Result<Vec<TopicSummary>> {
    (0..model.n_topics())
        .map(|z| top_terms(model, vocab, z, k_top))
        .collect()
}
