//! Comparative reports across labeled corpora.
//!
//! [`build_report`] runs the same [`Pipeline`] on every corpus and collects
//! the results; [`render`] only formats them.

mod render;
mod svg;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::emotion::{CorpusEmotion, Emotion, WordScore};
use crate::error::{Error, Result};
use crate::ingest::{Corpus, CorpusStats};
use crate::pipeline::{EmotionSection, Pipeline, PipelineConfig, TopicSection};

pub use render::{render, topic_table, Format};
pub use svg::{document_emotion_chart, emotion_chart, frequency_chart};

pub use crate::pipeline::DocumentProfile;

/// A corpus to include, optionally marked as the comparison baseline.
#[derive(Debug, Clone)]
pub struct ReportInput {
    pub corpus: Corpus,
    pub baseline: bool,
}

impl ReportInput {
    pub fn new(corpus: Corpus) -> Self {
        ReportInput {
            corpus,
            baseline: false,
        }
    }

    pub fn baseline(corpus: Corpus) -> Self {
        ReportInput {
            corpus,
            baseline: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub label: String,
    pub baseline: bool,
    pub stats: CorpusStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyRow {
    pub term: String,
    pub frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyTable {
    pub label: String,
    pub total_tokens: u64,
    /// Most frequent terms; frequencies are proportions of all tokens.
    pub rows: Vec<FrequencyRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEmotionEntry {
    pub label: String,
    pub corpus: CorpusEmotion,
    pub top_emotion: Emotion,
    pub top_words: Vec<WordScore>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentProfiles {
    pub label: String,
    pub documents: Vec<DocumentProfile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconInfo {
    pub entries: usize,
    pub pos_aware: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub tool_version: String,
    pub emotion_axis: Vec<Emotion>,
    pub stoplist_size: usize,
    pub lexicon: Option<LexiconInfo>,
    pub config: PipelineConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub corpora: Vec<CorpusEntry>,
    pub frequency_tables: Vec<FrequencyTable>,
    pub topic_summaries: Vec<TopicSection>,
    /// Absent when no lexicon was supplied.
    pub emotion_profiles: Option<Vec<CorpusEmotionEntry>>,
    pub per_document_profiles: Option<Vec<DocumentProfiles>>,
    pub metadata: ReportMetadata,
}

impl ComparisonReport {
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.corpora.iter().map(|c| c.label.as_str())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn build_report(inputs: &[ReportInput], pipeline: &Pipeline) -> Result<ComparisonReport> {
    if inputs.is_empty() {
        return Err(Error::InvalidParameter("no corpora given".into()));
    }
    let mut labels = BTreeSet::new();
    for input in inputs {
        if !labels.insert(input.corpus.label.as_str()) {
            return Err(Error::InvalidParameter(format!(
                "corpus label `{}` used twice",
                input.corpus.label
            )));
        }
    }
    if inputs.iter().filter(|i| i.baseline).count() > 1 {
        return Err(Error::InvalidParameter(
            "at most one corpus may be the baseline".into(),
        ));
    }

    let mut corpora = Vec::new();
    let mut frequency_tables = Vec::new();
    let mut topic_summaries = Vec::new();
    let mut emotions: Vec<EmotionSection> = Vec::new();

    for input in inputs {
        let analysis = pipeline.analyze(&input.corpus)?;
        corpora.push(CorpusEntry {
            label: input.corpus.label.clone(),
            baseline: input.baseline,
            stats: analysis.stats,
        });
        frequency_tables.push(FrequencyTable {
            label: input.corpus.label.clone(),
            total_tokens: analysis.frequencies.total_tokens,
            rows: analysis
                .frequencies
                .ranked
                .into_iter()
                .map(|(term, frequency)| FrequencyRow { term, frequency })
                .collect(),
        });
        topic_summaries.push(analysis.topics);
        emotions.extend(analysis.emotions);
    }

    let (emotion_profiles, per_document_profiles) = if pipeline.lexicon.is_some() {
        let (entries, docs) = emotions
            .into_iter()
            .map(|e| {
                (
                    CorpusEmotionEntry {
                        label: e.label.clone(),
                        corpus: e.corpus,
                        top_emotion: e.top_emotion,
                        top_words: e.top_words,
                    },
                    DocumentProfiles {
                        label: e.label,
                        documents: e.documents,
                    },
                )
            })
            .unzip();
        (Some(entries), Some(docs))
    } else {
        (None, None)
    };

    Ok(ComparisonReport {
        corpora,
        frequency_tables,
        topic_summaries,
        emotion_profiles,
        per_document_profiles,
        metadata: ReportMetadata {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            emotion_axis: Emotion::ALL.to_vec(),
            stoplist_size: pipeline.stoplist.len(),
            lexicon: pipeline.lexicon.as_ref().map(|l| LexiconInfo {
                entries: l.len(),
                pos_aware: l.pos_aware(),
            }),
            config: pipeline.config.clone(),
        },
    })
}
