//! Corpus analytics for comparing labeled collections of articles.
//!
//! The pipeline runs from plain-text directories to comparative reports:
//!
//! 1. [`ingest`] loads a directory of `.txt` files as a labeled [`Corpus`].
//! 2. [`textprep`] tokenizes, drops stop words and tags coarse parts of speech.
//! 3. [`dtm`] counts terms into a sparse document-term matrix and applies
//!    TF-IDF weighting, `W(d,t) = TF(d,t) · ln(N / df(t))`.
//! 4. [`topics`] fits NMF (multiplicative updates, NNDSVD start) or
//!    collapsed-Gibbs LDA, extracts top terms and scores UMass coherence.
//! 5. [`emotion`] scores documents against an eight-emotion lexicon.
//! 6. [`report`] runs all of the above per corpus and renders JSON, CSV,
//!    Markdown and SVG.
//!
//! ```
//! use corpus_lens::prelude::*;
//!
//! let corpus = Corpus::from_texts("demo", [
//!     ("a", "Rivers and mountains shape the valley."),
//!     ("b", "Markets and prices shape the economy."),
//! ])?;
//! let prepared = prepare_corpus(&corpus, StopList::bundled(), Tagger::bundled());
//! let (vocab, counts) = build_matrix(&prepared.documents)?;
//! let weights = tfidf(&counts)?;
//! // "shape" occurs in both documents, so its weight vanishes.
//! let shape = vocab.id("shape").unwrap();
//! assert_eq!(weights.get(0, shape), 0.0);
//! # Ok::<(), corpus_lens::Error>(())
//! ```

pub mod dtm;
pub mod emotion;
mod error;
pub mod ingest;
pub mod pipeline;
pub mod report;
pub mod textprep;
pub mod topics;

pub use error::{Error, Result};
pub use ingest::{Corpus, Document};

pub mod prelude {
    pub use crate::dtm::{build_matrix, normalized_term_frequencies, tfidf, DocTermMatrix, Vocabulary};
    pub use crate::emotion::{
        aggregate_corpus, load_lexicon, score_document, top_emotion_words, Emotion,
        EmotionLexicon, EmotionProfile,
    };
    pub use crate::ingest::{corpus_stats, load_corpus, Corpus, Document};
    pub use crate::pipeline::{Pipeline, PipelineConfig, TopicMethod};
    pub use crate::textprep::{prepare, prepare_corpus, tokenize, StopList, Tagger};
    pub use crate::topics::{
        lda_fit, nmf_fit, summarize, top_terms, umass_coherence, LdaConfig, NmfConfig, TopicModel,
    };
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/pipeline.md")]
    mod pipeline {}
    #[doc = include_str!("../../../book/src/tfidf.md")]
    mod tfidf {}
    #[doc = include_str!("../../../book/src/nmf.md")]
    mod nmf {}
    #[doc = include_str!("../../../book/src/lda.md")]
    mod lda {}
    #[doc = include_str!("../../../book/src/coherence.md")]
    mod coherence {}
    #[doc = include_str!("../../../book/src/emotions.md")]
    mod emotions {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
}
