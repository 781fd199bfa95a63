//! Per-corpus analysis with one shared set of parameters.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dtm::{build_matrix_with_min_df, normalized_term_frequencies, tfidf, TermFrequencies};
use crate::emotion::{
    corpus_emotion, score_document, top_emotion_words, CorpusEmotion, Emotion, EmotionLexicon,
    EmotionProfile, Pooling, WordScore,
};
use crate::error::{Error, Result};
use crate::ingest::{corpus_stats, Corpus, CorpusStats};
use crate::textprep::{prepare_corpus, PreparedCorpus, StopList, Tagger};
use crate::topics::{
    lda_fit, nmf_fit, summarize, umass_coherence, LdaConfig, NmfConfig, NmfInit, TopicSummary,
    DEFAULT_TOP_TERMS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopicMethod {
    #[default]
    Nmf,
    Lda,
}

impl FromStr for TopicMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "nmf" => Ok(TopicMethod::Nmf),
            "lda" => Ok(TopicMethod::Lda),
            _ => Err(format!("unknown method `{s}` (expected nmf or lda)")),
        }
    }
}

/// Every tunable of the pipeline. Serialized verbatim into report metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub method: TopicMethod,
    pub k: usize,
    pub seed: u64,
    pub top_terms: usize,
    pub top_frequencies: usize,
    pub min_df: usize,
    pub nmf_max_iter: usize,
    pub nmf_tol: f64,
    pub nmf_init: NmfInit,
    /// `None` means `50 / k`.
    pub lda_alpha: Option<f64>,
    pub lda_beta: f64,
    pub lda_iterations: usize,
    pub pooling: Pooling,
    pub top_emotion: Emotion,
    pub top_emotion_words: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let nmf = NmfConfig::default();
        let lda = LdaConfig::default();
        PipelineConfig {
            method: TopicMethod::Nmf,
            k: nmf.k,
            seed: nmf.seed,
            top_terms: DEFAULT_TOP_TERMS,
            top_frequencies: 20,
            min_df: 1,
            nmf_max_iter: nmf.max_iter,
            nmf_tol: nmf.tol,
            nmf_init: nmf.init,
            lda_alpha: lda.alpha,
            lda_beta: lda.beta,
            lda_iterations: lda.iterations,
            pooling: Pooling::Macro,
            top_emotion: Emotion::Inspired,
            top_emotion_words: 10,
        }
    }
}

impl PipelineConfig {
    pub fn nmf_config(&self, k: usize) -> NmfConfig {
        NmfConfig {
            k,
            seed: self.seed,
            max_iter: self.nmf_max_iter,
            tol: self.nmf_tol,
            init: self.nmf_init,
        }
    }

    pub fn lda_config(&self, k: usize) -> LdaConfig {
        LdaConfig {
            k,
            alpha: self.lda_alpha,
            beta: self.lda_beta,
            iterations: self.lda_iterations,
            seed: self.seed,
        }
    }
}

/// Fitted topics of one corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicSection {
    pub label: String,
    pub method: TopicMethod,
    /// Topics actually fitted; `k` is capped by the matrix dimensions.
    pub k: usize,
    pub summaries: Vec<TopicSummary>,
    /// UMass score of each topic, aligned with `summaries`.
    pub coherence: Vec<f64>,
    pub mean_coherence: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective_trace: Option<Vec<f64>>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentProfile {
    pub doc_id: String,
    pub profile: EmotionProfile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmotionSection {
    pub label: String,
    pub corpus: CorpusEmotion,
    /// Per-document profiles in document-id order.
    pub documents: Vec<DocumentProfile>,
    pub top_emotion: Emotion,
    pub top_words: Vec<WordScore>,
}

/// Everything computed for one corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusAnalysis {
    pub prepared: PreparedCorpus,
    pub stats: CorpusStats,
    pub frequencies: TermFrequencies,
    pub topics: TopicSection,
    pub emotions: Option<EmotionSection>,
}

/// Shared configuration and resources applied identically to every corpus.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub config: PipelineConfig,
    pub stoplist: StopList,
    pub tagger: Tagger,
    pub lexicon: Option<EmotionLexicon>,
}

impl Pipeline {
    pub fn new(config: PipelineConfig) -> Self {
        Pipeline {
            config,
            stoplist: StopList::bundled().clone(),
            tagger: Tagger::bundled().clone(),
            lexicon: None,
        }
    }

    pub fn with_stoplist(mut self, stoplist: StopList) -> Self {
        self.stoplist = stoplist;
        self
    }

    pub fn with_tagger(mut self, tagger: Tagger) -> Self {
        self.tagger = tagger;
        self
    }

    pub fn with_lexicon(mut self, lexicon: EmotionLexicon) -> Self {
        self.lexicon = Some(lexicon);
        self
    }

    pub fn prepare(&self, corpus: &Corpus) -> PreparedCorpus {
        prepare_corpus(corpus, &self.stoplist, &self.tagger)
    }

    /// Fits the configured topic model with `k` topics.
    pub fn fit_topics_with_k(&self, prepared: &PreparedCorpus, k: usize) -> Result<TopicSection> {
        let cfg = &self.config;
        let (vocab, counts) = build_matrix_with_min_df(&prepared.documents, cfg.min_df)?;
        let k = k.min(counts.n_docs()).min(counts.n_terms());
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        let (summaries, objective_trace, iterations) = match cfg.method {
            TopicMethod::Nmf => {
                let model = nmf_fit(&tfidf(&counts)?, &cfg.nmf_config(k))?;
                let summaries = summarize(&model, &vocab, cfg.top_terms)?;
                (summaries, Some(model.objective_trace), model.iterations)
            }
            TopicMethod::Lda => {
                let model = lda_fit(&counts, &cfg.lda_config(k))?;
                let summaries = summarize(&model, &vocab, cfg.top_terms)?;
                (summaries, None, model.iterations)
            }
        };
        let coherence = summaries
            .iter()
            .map(|s| umass_coherence(s, &counts, &vocab))
            .collect::<Result<Vec<_>>>()?;
        let mean_coherence = coherence.iter().sum::<f64>() / coherence.len() as f64;
        Ok(TopicSection {
            label: prepared.label.clone(),
            method: cfg.method,
            k,
            summaries,
            coherence,
            mean_coherence,
            objective_trace,
            iterations,
        })
    }

    pub fn fit_topics(&self, prepared: &PreparedCorpus) -> Result<TopicSection> {
        self.fit_topics_with_k(prepared, self.config.k)
    }

    /// Mean coherence for each candidate topic count.
    pub fn coherence_sweep(
        &self,
        prepared: &PreparedCorpus,
        ks: impl IntoIterator<Item = usize>,
    ) -> Result<Vec<(usize, f64)>> {
        ks.into_iter()
            .map(|k| {
                self.fit_topics_with_k(prepared, k)
                    .map(|s| (s.k, s.mean_coherence))
            })
            .collect()
    }

    /// Emotion profiles, or `None` when no lexicon is configured.
    pub fn emotions(&self, prepared: &PreparedCorpus) -> Result<Option<EmotionSection>> {
        let Some(lex) = &self.lexicon else {
            return Ok(None);
        };
        let docs = &prepared.documents;
        let documents = docs
            .iter()
            .map(|d| DocumentProfile {
                doc_id: d.doc_id.clone(),
                profile: score_document(d, lex),
            })
            .collect();
        let corpus = corpus_emotion(docs, lex, self.config.pooling)?;
        let top_words = top_emotion_words(
            docs,
            lex,
            self.config.top_emotion,
            self.config.top_emotion_words,
        );
        Ok(Some(EmotionSection {
            label: prepared.label.clone(),
            corpus,
            documents,
            top_emotion: self.config.top_emotion,
            top_words,
        }))
    }

    /// Runs every stage on one corpus.
    pub fn analyze(&self, corpus: &Corpus) -> Result<CorpusAnalysis> {
        let prepared = self.prepare(corpus);
        let stats = corpus_stats(&prepared);
        let (vocab, counts) = build_matrix_with_min_df(&prepared.documents, self.config.min_df)?;
        let mut frequencies = normalized_term_frequencies(&counts, &vocab)?;
        frequencies.ranked.truncate(self.config.top_frequencies);
        let topics = self.fit_topics(&prepared)?;
        let emotions = self.emotions(&prepared)?;
        Ok(CorpusAnalysis {
            prepared,
            stats,
            frequencies,
            topics,
            emotions,
        })
    }
}
