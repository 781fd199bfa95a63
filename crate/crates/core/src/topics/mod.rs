//! Topic models over document-term matrices and their evaluation.
//!
//! NMF runs on TF-IDF weights and reads topics from the columns of the
//! term-topic factor; LDA runs on raw counts and reads them from `phi`.
//! Both expose the same [`TopicModel`] view so top terms and coherence are
//! computed identically for either.

mod coherence;
mod lda;
mod nmf;
mod summary;

pub use coherence::{mean_coherence, umass_coherence};
pub use lda::{lda_fit, GibbsSampler, LdaConfig, LdaModel};
pub use nmf::{
    frobenius_residual, nmf_fit, nmf_fit_dense, nndsvd, terms_by_documents, NmfConfig, NmfInit,
    NmfModel, DENOMINATOR_EPSILON,
};
pub use summary::{summarize, top_terms, TermWeight, TopicSummary, DEFAULT_TOP_TERMS};

pub trait TopicModel {
    fn n_topics(&self) -> usize;
    fn n_terms(&self) -> usize;
    /// Weight of every vocabulary term in one topic.
    fn term_weights(&self, topic: usize) -> Vec<f64>;
}
