//! Vocabulary, sparse document-term matrices and TF-IDF weighting.
//!
//! Documents are rows, vocabulary terms are columns. Only nonzero entries are
//! stored, each row sorted by column.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textprep::PreparedDocument;

/// Sorted, deduplicated term list with a reverse index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let terms: Vec<String> = terms
            .into_iter()
            .map(Into::into)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Vocabulary { terms, index }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn id(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, id: usize) -> &str {
        &self.terms[id]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.terms)?)
    }
}

impl Serialize for Vocabulary {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vocabulary {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Vocabulary::from_terms(Vec::<String>::deserialize(d)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum MatrixKind {
    Counts,
    Tfidf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocTermMatrix {
    kind: MatrixKind,
    n_terms: usize,
    doc_ids: Vec<String>,
    rows: Vec<Vec<(usize, f64)>>,
}

impl DocTermMatrix {
    /// Builds a matrix from per-document `(column, value)` lists.
    ///
    /// Zero entries are dropped; negative or non-finite values are rejected.
    pub fn from_rows(
        kind: MatrixKind,
        n_terms: usize,
        doc_ids: Vec<String>,
        rows: Vec<Vec<(usize, f64)>>,
    ) -> Result<Self> {
        if doc_ids.len() != rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} row labels for {} rows",
                doc_ids.len(),
                rows.len()
            )));
        }
        let mut clean = Vec::with_capacity(rows.len());
        for mut row in rows {
            row.sort_by_key(|&(t, _)| t);
            let mut out: Vec<(usize, f64)> = Vec::with_capacity(row.len());
            for (t, v) in row {
                if t >= n_terms {
                    return Err(Error::DimensionMismatch(format!(
                        "column {t} out of range for {n_terms} terms"
                    )));
                }
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "matrix entry {v} is not a finite nonnegative number"
                    )));
                }
                if kind == MatrixKind::Counts && v.fract() != 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "count matrix entry {v} is not an integer"
                    )));
                }
                if v == 0.0 {
                    continue;
                }
                match out.last_mut() {
                    Some(last) if last.0 == t => last.1 += v,
                    _ => out.push((t, v)),
                }
            }
            clean.push(out);
        }
        Ok(DocTermMatrix {
            kind,
            n_terms,
            doc_ids,
            rows: clean,
        })
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn n_docs(&self) -> usize {
        self.rows.len()
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    /// Nonzero entries of one document, sorted by column.
    pub fn row(&self, doc: usize) -> &[(usize, f64)] {
        &self.rows[doc]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, f64)]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn get(&self, doc: usize, term: usize) -> f64 {
        let row = &self.rows[doc];
        row.binary_search_by_key(&term, |&(t, _)| t)
            .map(|i| row[i].1)
            .unwrap_or(0.0)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(_, v)| v).sum())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.n_terms];
        for row in &self.rows {
            for &(t, v) in row {
                sums[t] += v;
            }
        }
        sums
    }

    /// Number of documents in which each term has a nonzero entry.
    pub fn document_frequencies(&self) -> Vec<usize> {
        let mut df = vec![0usize; self.n_terms];
        for row in &self.rows {
            for &(t, _) in row {
                df[t] += 1;
            }
        }
        df
    }

    /// For each term, the sorted row indices where it occurs.
    pub fn term_documents(&self) -> Vec<Vec<usize>> {
        let mut postings = vec![Vec::new(); self.n_terms];
        for (d, row) in self.rows.iter().enumerate() {
            for &(t, _) in row {
                postings[t].push(d);
            }
        }
        postings
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0.0; self.n_terms];
                for &(t, v) in row {
                    dense[t] = v;
                }
                dense
            })
            .collect()
    }

    fn require_kind(&self, kind: MatrixKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "expected a {kind:?} matrix, got {:?}",
                self.kind
            )))
        }
    }

    /// Writes `doc_id<TAB>term<TAB>value` lines, row by row.
    pub fn write_coordinates<W: Write>(&self, vocab: &Vocabulary, mut w: W) -> std::io::Result<()> {
        for (doc, row) in self.doc_ids.iter().zip(&self.rows) {
            for &(t, v) in row {
                writeln!(w, "{doc}\t{}\t{v}", vocab.term(t))?;
            }
        }
        Ok(())
    }
}

/// Counts every prepared token into a document-term matrix.
pub fn build_matrix(docs: &[PreparedDocument]) -> Result<(Vocabulary, DocTermMatrix)> {
    build_matrix_with_min_df(docs, 1)
}

/// Like [`build_matrix`], keeping only terms that occur in at least `min_df`
/// documents.
pub fn build_matrix_with_min_df(
    docs: &[PreparedDocument],
    min_df: usize,
) -> Result<(Vocabulary, DocTermMatrix)> {
    let per_doc: Vec<BTreeMap<&str, usize>> = docs
        .iter()
        .map(|d| {
            let mut counts = BTreeMap::new();
            for w in d.words() {
                *counts.entry(w).or_insert(0) += 1;
            }
            counts
        })
        .collect();

    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for counts in &per_doc {
        for &w in counts.keys() {
            *df.entry(w).or_insert(0) += 1;
        }
    }
    let vocab = Vocabulary::from_terms(
        df.iter()
            .filter(|&(_, &n)| n >= min_df.max(1))
            .map(|(&w, _)| w),
    );
    if vocab.is_empty() {
        return Err(Error::EmptyCorpus);
    }

    let rows = per_doc
        .iter()
        .map(|counts| {
            counts
                .iter()
                .filter_map(|(w, &c)| vocab.id(w).map(|t| (t, c as f64)))
                .collect()
        })
        .collect();
    let doc_ids = docs.iter().map(|d| d.doc_id.clone()).collect();
    let m = DocTermMatrix::from_rows(MatrixKind::Counts, vocab.len(), doc_ids, rows)?;
    Ok((vocab, m))
}

/// Reweights counts as `count · ln(N / df(term))`.
///
/// Terms present in every document get weight zero and drop out of the
/// sparse pattern.
pub fn tfidf(counts: &DocTermMatrix) -> Result<DocTermMatrix> {
    counts.require_kind(MatrixKind::Counts)?;
    let n = counts.n_docs() as f64;
    let idf: Vec<f64> = counts
        .document_frequencies()
        .into_iter()
        .map(|df| if df == 0 { 0.0 } else { (n / df as f64).ln() })
        .collect();
    let rows = counts
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(t, c)| (t, c * idf[t]))
                .filter(|&(_, w)| w > 0.0)
                .collect()
        })
        .collect();
    Ok(DocTermMatrix {
        kind: MatrixKind::Tfidf,
        n_terms: counts.n_terms,
        doc_ids: counts.doc_ids.clone(),
        rows,
    })
}

/// Corpus-level relative frequency of each term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermFrequencies {
    pub total_tokens: u64,
    /// `(term, frequency)` sorted by descending frequency, ties by term.
    pub ranked: Vec<(String, f64)>,
}

impl TermFrequencies {
    pub fn top(&self, n: usize) -> &[(String, f64)] {
        &self.ranked[..n.min(self.ranked.len())]
    }

    pub fn get(&self, term: &str) -> Option<f64> {
        self.ranked.iter().find(|(t, _)| t == term).map(|&(_, f)| f)
    }
}

/// Divides each term's total count by the total token count of the corpus.
pub fn normalized_term_frequencies(
    counts: &DocTermMatrix,
    vocab: &Vocabulary,
) -> Result<TermFrequencies> {
    counts.require_kind(MatrixKind::Counts)?;
    if vocab.len() != counts.n_terms() {
        return Err(Error::DimensionMismatch(format!(
            "vocabulary has {} terms, matrix has {}",
            vocab.len(),
            counts.n_terms()
        )));
    }
    let sums = counts.column_sums();
    let total: f64 = sums.iter().sum();
    if total == 0.0 {
        return Err(Error::EmptyCorpus);
    }
    let mut ranked: Vec<(String, f64)> = sums
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0.0)
        .map(|(t, &c)| (vocab.term(t).to_string(), c / total))
        .collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(TermFrequencies {
        total_tokens: total as u64,
        ranked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textprep::Token;

    fn doc(id: &str, words: &[&str]) -> PreparedDocument {
        PreparedDocument {
            doc_id: id.into(),
            tokens: words.iter().map(|w| Token::new(*w)).collect(),
        }
    }

    #[test]
    fn counts_single_term() {
        let (v, m) = build_matrix(&[doc("a", &["term"]), doc("b", &["term", "term"])]).unwrap();
        assert_eq!(v.terms(), ["term"]);
        assert_eq!(m.to_dense(), vec![vec![1.0], vec![2.0]]);
        assert_eq!(m.kind(), MatrixKind::Counts);
    }

    #[test]
    fn disjoint_documents_block_diagonal() {
        let (v, m) = build_matrix(&[doc("a", &["x"]), doc("b", &["y"])]).unwrap();
        assert_eq!(v.terms(), ["x", "y"]);
        assert_eq!(m.to_dense(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
    }

    #[test]
    fn all_empty_documents_rejected() {
        assert!(matches!(
            build_matrix(&[doc("a", &[]), doc("b", &[])]),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn empty_document_keeps_its_row() {
        let (_, m) = build_matrix(&[doc("a", &["x"]), doc("b", &[])]).unwrap();
        assert_eq!(m.n_docs(), 2);
        assert_eq!(m.doc_ids(), ["a", "b"]);
        assert!(m.row(1).is_empty());
    }

    #[test]
    fn min_df_prunes() {
        let docs = [doc("a", &["x", "y"]), doc("b", &["x", "z"])];
        let (v, m) = build_matrix_with_min_df(&docs, 2).unwrap();
        assert_eq!(v.terms(), ["x"]);
        assert_eq!(m.to_dense(), vec![vec![1.0], vec![1.0]]);
    }

    #[test]
    fn tfidf_ubiquitous_term_is_zero() {
        let docs = [doc("a", &["x", "y"]), doc("b", &["x"])];
        let (v, m) = build_matrix(&docs).unwrap();
        let w = tfidf(&m).unwrap();
        let x = v.id("x").unwrap();
        assert_eq!(w.get(0, x), 0.0);
        assert_eq!(w.get(1, x), 0.0);
        assert_eq!(w.get(0, v.id("y").unwrap()), 2f64.ln());
        assert_eq!(w.nnz(), 1);
    }

    #[test]
    fn tfidf_single_value() {
        // N=4, df=2, TF=3
        let docs = [
            doc("a", &["t", "t", "t"]),
            doc("b", &["t", "u"]),
            doc("c", &["u"]),
            doc("d", &["u"]),
        ];
        let (v, m) = build_matrix(&docs).unwrap();
        let w = tfidf(&m).unwrap();
        let got = w.get(0, v.id("t").unwrap());
        assert!((got - 2.0794415416798357).abs() < 1e-12, "{got}");
    }

    #[test]
    fn tfidf_requires_counts() {
        let (_, m) = build_matrix(&[doc("a", &["x"]), doc("b", &["y"])]).unwrap();
        let w = tfidf(&m).unwrap();
        assert!(tfidf(&w).is_err());
        assert!(normalized_term_frequencies(&w, &Vocabulary::from_terms(["x", "y"])).is_err());
    }

    #[test]
    fn frequencies_normalize() {
        let (v, m) = build_matrix(&[doc("a", &["x", "x", "y"])]).unwrap();
        let f = normalized_term_frequencies(&m, &v).unwrap();
        assert_eq!(f.ranked, vec![("x".into(), 2.0 / 3.0), ("y".into(), 1.0 / 3.0)]);
        assert_eq!(f.total_tokens, 3);
    }

    #[test]
    fn frequency_ties_are_lexicographic() {
        let (v, m) = build_matrix(&[doc("a", &["b", "a", "c", "c"])]).unwrap();
        let f = normalized_term_frequencies(&m, &v).unwrap();
        let order: Vec<_> = f.ranked.iter().map(|(t, _)| t.as_str()).collect();
        assert_eq!(order, ["c", "a", "b"]);
    }

    #[test]
    fn coordinate_export() {
        let (v, m) = build_matrix(&[doc("a", &["x", "x"]), doc("b", &["y"])]).unwrap();
        let mut out = Vec::new();
        m.write_coordinates(&v, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "a\tx\t2\nb\ty\t1\n");
        let back: Vocabulary = serde_json::from_str(&v.to_json().unwrap()).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn from_rows_validation() {
        let ids = vec!["a".to_string()];
        assert!(DocTermMatrix::from_rows(MatrixKind::Counts, 2, ids.clone(), vec![vec![(5, 1.0)]]).is_err());
        assert!(DocTermMatrix::from_rows(MatrixKind::Counts, 2, ids.clone(), vec![vec![(0, -1.0)]]).is_err());
        assert!(DocTermMatrix::from_rows(MatrixKind::Counts, 2, ids.clone(), vec![vec![(0, 0.5)]]).is_err());
        assert!(DocTermMatrix::from_rows(MatrixKind::Tfidf, 2, ids, vec![vec![(0, 0.5)]]).is_ok());
    }
}
