//! Loading labeled corpora from directories of plain-text files.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textprep::PreparedCorpus;

/// One article: the text of a single `.txt` file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    /// File stem, unique within the corpus.
    pub id: String,
    pub raw_text: String,
    pub source_path: String,
}

/// A labeled collection of documents, ordered by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub label: String,
    pub documents: Vec<Document>,
}

impl Corpus {
    /// Builds a corpus from in-memory documents, sorting them by id.
    pub fn new(label: impl Into<String>, mut documents: Vec<Document>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        documents.sort_by(|a, b| a.id.cmp(&b.id));
        let mut seen = BTreeSet::new();
        for doc in &documents {
            if doc.id.is_empty() {
                return Err(Error::InvalidParameter("document id is empty".into()));
            }
            if !seen.insert(doc.id.as_str()) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate document id `{}`",
                    doc.id
                )));
            }
        }
        Ok(Corpus { label, documents })
    }

    /// Convenience constructor for `(id, text)` pairs.
    pub fn from_texts<I, S, T>(label: impl Into<String>, texts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let documents = texts
            .into_iter()
            .map(|(id, text)| Document {
                id: id.into(),
                raw_text: text.into(),
                source_path: String::new(),
            })
            .collect();
        Corpus::new(label, documents)
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }
}

/// Loads every `.txt` file directly inside `dir` as one document.
///
/// Files must be UTF-8; the first file that is not fails the whole load.
pub fn load_corpus(dir: impl AsRef<Path>, label: &str) -> Result<Corpus> {
    let dir = dir.as_ref();
    if label.is_empty() {
        return Err(Error::EmptyLabel);
    }
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;

    let mut paths: Vec<PathBuf> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "txt") {
            paths.push(path);
        }
    }
    if paths.is_empty() {
        return Err(Error::NoDocuments(dir.to_path_buf()));
    }

    let mut documents = Vec::with_capacity(paths.len());
    for path in paths {
        let bytes = fs::read(&path).map_err(|e| Error::io(&path, e))?;
        let raw_text =
            String::from_utf8(bytes).map_err(|_| Error::Encoding { path: path.clone() })?;
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::Encoding { path: path.clone() })?
            .to_string();
        documents.push(Document {
            id,
            raw_text,
            source_path: path.display().to_string(),
        });
    }
    Corpus::new(label, documents)
}

/// Summary counts over a prepared corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub label: String,
    pub documents: usize,
    pub tokens: usize,
    pub vocabulary: usize,
    /// Token count of each document, in corpus order.
    pub tokens_per_document: Vec<usize>,
}

pub fn corpus_stats(corpus: &PreparedCorpus) -> CorpusStats {
    let tokens_per_document: Vec<usize> =
        corpus.documents.iter().map(|d| d.tokens.len()).collect();
    let vocabulary = corpus
        .documents
        .iter()
        .flat_map(|d| d.tokens.iter().map(|t| t.normalized.as_str()))
        .collect::<BTreeSet<_>>()
        .len();
    CorpusStats {
        label: corpus.label.clone(),
        documents: corpus.documents.len(),
        tokens: tokens_per_document.iter().sum(),
        vocabulary,
        tokens_per_document,
    }
}
