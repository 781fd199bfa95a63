//! Lexicon-based evoked-emotion profiles.
//!
//! A lexicon maps a word, optionally qualified by a coarse part of speech, to
//! eight scores in `[0, 1]`. A document's profile is the sum of the score
//! vectors of its matched tokens, L1-normalized into a distribution over the
//! eight emotions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textprep::{Pos, PreparedDocument, Token};

pub const N_EMOTIONS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Emotion {
    Afraid,
    Amused,
    Angry,
    Annoyed,
    DontCare,
    Happy,
    Inspired,
    Sad,
}

impl Emotion {
    /// Fixed axis order used by every score vector.
    pub const ALL: [Emotion; N_EMOTIONS] = [
        Emotion::Afraid,
        Emotion::Amused,
        Emotion::Angry,
        Emotion::Annoyed,
        Emotion::DontCare,
        Emotion::Happy,
        Emotion::Inspired,
        Emotion::Sad,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Emotion::Afraid => "AFRAID",
            Emotion::Amused => "AMUSED",
            Emotion::Angry => "ANGRY",
            Emotion::Annoyed => "ANNOYED",
            Emotion::DontCare => "DONT_CARE",
            Emotion::Happy => "HAPPY",
            Emotion::Inspired => "INSPIRED",
            Emotion::Sad => "SAD",
        }
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Emotion {
    type Err = String;

    /// Accepts `DONT_CARE`, `DON'T CARE` and similar spellings, any case.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let canon: String = s
            .chars()
            .filter(|c| c.is_ascii_alphabetic())
            .map(|c| c.to_ascii_uppercase())
            .collect();
        Emotion::ALL
            .into_iter()
            .find(|e| e.as_str().replace('_', "") == canon)
            .ok_or_else(|| format!("unknown emotion `{s}`"))
    }
}

/// Eight scores in [`Emotion::ALL`] order. Serializes as an object keyed by
/// emotion name.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EmotionScores(pub [f64; N_EMOTIONS]);

impl EmotionScores {
    pub fn get(&self, e: Emotion) -> f64 {
        self.0[e.index()]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Emotion with the largest score; ties go to the earlier axis entry.
    pub fn argmax(&self) -> Emotion {
        let mut best = 0;
        for i in 1..N_EMOTIONS {
            if self.0[i] > self.0[best] {
                best = i;
            }
        }
        Emotion::ALL[best]
    }

    pub fn argmin(&self) -> Emotion {
        let mut best = 0;
        for i in 1..N_EMOTIONS {
            if self.0[i] < self.0[best] {
                best = i;
            }
        }
        Emotion::ALL[best]
    }
}

impl Serialize for EmotionScores {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(N_EMOTIONS))?;
        for e in Emotion::ALL {
            map.serialize_entry(e.as_str(), &self.0[e.index()])?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for EmotionScores {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<Emotion, f64>::deserialize(d)?;
        let mut out = [0.0; N_EMOTIONS];
        for e in Emotion::ALL {
            out[e.index()] = *map
                .get(&e)
                .ok_or_else(|| serde::de::Error::custom(format!("missing {e}")))?;
        }
        Ok(EmotionScores(out))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexiconKey {
    pub word: String,
    /// `None` matches the word under any tag.
    pub pos: Option<Pos>,
}

impl LexiconKey {
    /// Parses `word` or `word#p` where `p` is one of `n v a r`.
    pub fn parse(raw: &str) -> std::result::Result<Self, String> {
        let (word, pos) = match raw.rsplit_once('#') {
            Some((w, p)) => {
                let pos = Pos::from_lexicon_suffix(&p.to_ascii_lowercase())
                    .ok_or_else(|| format!("unknown POS suffix `#{p}`"))?;
                (w, Some(pos))
            }
            None => (raw, None),
        };
        let word = word.trim().to_lowercase();
        if word.is_empty() {
            return Err("empty word".into());
        }
        Ok(LexiconKey { word, pos })
    }
}

impl fmt::Display for LexiconKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.pos {
            Some(Pos::Noun) => "#n",
            Some(Pos::Verb) => "#v",
            Some(Pos::Adj) => "#a",
            Some(Pos::Adv) => "#r",
            Some(Pos::Other) | None => "",
        };
        write!(f, "{}{suffix}", self.word)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmotionLexicon {
    entries: BTreeMap<LexiconKey, EmotionScores>,
    pos_aware: bool,
}

impl EmotionLexicon {
    /// Builds a lexicon, checking every score lies in `[0, 1]`.
    ///
    /// Without `pos_aware`, POS qualifiers are dropped and entries that then
    /// share a word are averaged.
    pub fn from_entries<I>(pos_aware: bool, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LexiconKey, [f64; N_EMOTIONS])>,
    {
        let mut seen = BTreeSet::new();
        let mut pending: BTreeMap<LexiconKey, Vec<[f64; N_EMOTIONS]>> = BTreeMap::new();
        for (key, scores) in entries {
            if let Some(bad) = scores.iter().find(|s| !(0.0..=1.0).contains(*s)) {
                return Err(Error::InvalidParameter(format!(
                    "score {bad} for `{key}` outside [0, 1]"
                )));
            }
            if !seen.insert(key.clone()) {
                return Err(Error::InvalidParameter(format!("duplicate key `{key}`")));
            }
            let key = if pos_aware {
                key
            } else {
                LexiconKey { pos: None, ..key }
            };
            pending.entry(key).or_default().push(scores);
        }
        let entries = pending
            .into_iter()
            .map(|(k, rows)| (k, EmotionScores(mean_rows(&rows))))
            .collect();
        Ok(EmotionLexicon { entries, pos_aware })
    }

    pub fn pos_aware(&self) -> bool {
        self.pos_aware
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&LexiconKey, &EmotionScores)> {
        self.entries.iter()
    }

    pub fn get(&self, word: &str, pos: Option<Pos>) -> Option<&EmotionScores> {
        self.entries.get(&LexiconKey {
            word: word.to_string(),
            pos,
        })
    }

    /// Scores for a token, honoring its tag when the lexicon is POS-aware.
    pub fn lookup(&self, token: &Token) -> Option<&EmotionScores> {
        if self.pos_aware {
            self.get(&token.normalized, Some(token.pos))
                .or_else(|| self.get(&token.normalized, None))
        } else {
            self.get(&token.normalized, None)
        }
    }

    /// Same lexicon with every score mapped through `f`. Bounds are not
    /// re-checked.
    #[doc(hidden)]
    pub fn map_scores(&self, f: impl Fn(f64) -> f64) -> EmotionLexicon {
        EmotionLexicon {
            entries: self
                .entries
                .iter()
                .map(|(k, s)| (k.clone(), EmotionScores(s.0.map(&f))))
                .collect(),
            pos_aware: self.pos_aware,
        }
    }

    /// Parses the TSV format: a header naming the eight emotions after the
    /// key column, then one `key<TAB>score…` row per entry.
    pub fn parse_tsv(text: &str, pos_aware: bool, path: &Path) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header row".into()))?;
        let columns: Vec<&str> = header.split('\t').map(str::trim).collect();
        let mut column_of = [usize::MAX; N_EMOTIONS];
        for (c, name) in columns.iter().enumerate().skip(1) {
            if let Ok(e) = name.parse::<Emotion>() {
                column_of[e.index()] = c;
            }
        }
        if let Some(i) = column_of.iter().position(|&c| c == usize::MAX) {
            return Err(parse_err(
                1,
                format!("header lacks column {}", Emotion::ALL[i]),
            ));
        }

        let mut entries = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, line) in lines {
            let lineno = i + 1;
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != columns.len() {
                return Err(parse_err(
                    lineno,
                    format!("expected {} columns, found {}", columns.len(), fields.len()),
                ));
            }
            let key = LexiconKey::parse(fields[0]).map_err(|m| parse_err(lineno, m))?;
            if !seen.insert(key.clone()) {
                return Err(parse_err(lineno, format!("duplicate key `{key}`")));
            }
            let mut scores = [0.0; N_EMOTIONS];
            for (e, &c) in column_of.iter().enumerate() {
                let v: f64 = fields[c]
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad number `{}`", fields[c])))?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(parse_err(
                        lineno,
                        format!("score {v} for {} outside [0, 1]", Emotion::ALL[e]),
                    ));
                }
                scores[e] = v;
            }
            entries.push((key, scores));
        }
        EmotionLexicon::from_entries(pos_aware, entries)
    }

    pub fn write_tsv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let header: Vec<&str> = Emotion::ALL.iter().map(|e| e.as_str()).collect();
        writeln!(w, "word\t{}", header.join("\t"))?;
        for (key, scores) in &self.entries {
            let cells: Vec<String> = scores.0.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{key}\t{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

fn mean_rows(rows: &[[f64; N_EMOTIONS]]) -> [f64; N_EMOTIONS] {
    if rows.len() == 1 {
        return rows[0];
    }
    let mut out = [0.0; N_EMOTIONS];
    for row in rows {
        for (o, v) in out.iter_mut().zip(row) {
            *o += v;
        }
    }
    out.map(|v| v / rows.len() as f64)
}

pub fn load_lexicon(path: impl AsRef<Path>, pos_aware: bool) -> Result<EmotionLexicon> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    EmotionLexicon::parse_tsv(&text, pos_aware, path)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmotionProfile {
    /// Distribution over the eight emotions when `defined`, zeros otherwise.
    pub scores: EmotionScores,
    pub matched_tokens: usize,
    pub total_tokens: usize,
    pub defined: bool,
}

impl EmotionProfile {
    fn from_raw(raw: [f64; N_EMOTIONS], matched_tokens: usize, total_tokens: usize) -> Self {
        let total: f64 = raw.iter().sum();
        let defined = matched_tokens > 0 && total > 0.0;
        let scores = if defined {
            raw.map(|v| v / total)
        } else {
            [0.0; N_EMOTIONS]
        };
        EmotionProfile {
            scores: EmotionScores(scores),
            matched_tokens,
            total_tokens,
            defined,
        }
    }
}

fn raw_scores(doc: &PreparedDocument, lex: &EmotionLexicon) -> ([f64; N_EMOTIONS], usize) {
    let mut raw = [0.0; N_EMOTIONS];
    let mut matched = 0;
    for token in &doc.tokens {
        if let Some(scores) = lex.lookup(token) {
            matched += 1;
            for (r, s) in raw.iter_mut().zip(scores.0) {
                *r += s;
            }
        }
    }
    (raw, matched)
}

/// Sums matched tokens' score vectors and normalizes them to sum to one.
///
/// A document with no matches (or only all-zero matches) comes back with
/// `defined == false` and zero scores.
pub fn score_document(doc: &PreparedDocument, lex: &EmotionLexicon) -> EmotionProfile {
    let (raw, matched) = raw_scores(doc, lex);
    EmotionProfile::from_raw(raw, matched, doc.tokens.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pooling {
    /// Mean of per-document profiles.
    #[default]
    Macro,
    /// All tokens of the corpus scored as one document.
    Micro,
}

impl FromStr for Pooling {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "macro" => Ok(Pooling::Macro),
            "micro" => Ok(Pooling::Micro),
            _ => Err(format!("unknown pooling `{s}` (expected micro or macro)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEmotion {
    pub profile: EmotionProfile,
    pub pooling: Pooling,
    pub documents: usize,
    pub undefined_documents: usize,
}

/// Mean of the defined profiles, renormalized. Undefined profiles are
/// skipped and counted.
pub fn aggregate_corpus(profiles: &[EmotionProfile]) -> Result<CorpusEmotion> {
    let defined: Vec<&EmotionProfile> = profiles.iter().filter(|p| p.defined).collect();
    if defined.is_empty() {
        return Err(Error::InvalidParameter(
            "no document matched the lexicon".into(),
        ));
    }
    let mut mean = [0.0; N_EMOTIONS];
    for p in &defined {
        for (m, s) in mean.iter_mut().zip(p.scores.0) {
            *m += s;
        }
    }
    let n = defined.len() as f64;
    let mean = mean.map(|v| v / n);
    let matched = profiles.iter().map(|p| p.matched_tokens).sum();
    let total = profiles.iter().map(|p| p.total_tokens).sum();
    Ok(CorpusEmotion {
        profile: EmotionProfile::from_raw(mean, matched, total),
        pooling: Pooling::Macro,
        documents: profiles.len(),
        undefined_documents: profiles.len() - defined.len(),
    })
}

/// Scores all tokens of a corpus as one bag.
pub fn pooled_profile(docs: &[PreparedDocument], lex: &EmotionLexicon) -> Result<CorpusEmotion> {
    let mut raw = [0.0; N_EMOTIONS];
    let mut matched = 0;
    let mut undefined = 0;
    for doc in docs {
        let (r, m) = raw_scores(doc, lex);
        if m == 0 || r.iter().sum::<f64>() == 0.0 {
            undefined += 1;
        }
        matched += m;
        for (a, b) in raw.iter_mut().zip(r) {
            *a += b;
        }
    }
    let total = docs.iter().map(|d| d.tokens.len()).sum();
    let profile = EmotionProfile::from_raw(raw, matched, total);
    if !profile.defined {
        return Err(Error::InvalidParameter(
            "no document matched the lexicon".into(),
        ));
    }
    Ok(CorpusEmotion {
        profile,
        pooling: Pooling::Micro,
        documents: docs.len(),
        undefined_documents: undefined,
    })
}

/// Corpus-level profile under either pooling strategy.
pub fn corpus_emotion(
    docs: &[PreparedDocument],
    lex: &EmotionLexicon,
    pooling: Pooling,
) -> Result<CorpusEmotion> {
    match pooling {
        Pooling::Macro => {
            let profiles: Vec<_> = docs.iter().map(|d| score_document(d, lex)).collect();
            aggregate_corpus(&profiles)
        }
        Pooling::Micro => pooled_profile(docs, lex),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordScore {
    pub word: String,
    pub score: f64,
}

/// Distinct matched words of a corpus ranked by their score for `emotion`.
///
/// A word matched under several tags keeps its best score.
pub fn top_emotion_words(
    docs: &[PreparedDocument],
    lex: &EmotionLexicon,
    emotion: Emotion,
    n: usize,
) -> Vec<WordScore> {
    let mut best: BTreeMap<&str, f64> = BTreeMap::new();
    for token in docs.iter().flat_map(|d| &d.tokens) {
        if let Some(scores) = lex.lookup(token) {
            let s = scores.get(emotion);
            best.entry(token.normalized.as_str())
                .and_modify(|b| *b = b.max(s))
                .or_insert(s);
        }
    }
    let mut ranked: Vec<WordScore> = best
        .into_iter()
        .map(|(w, score)| WordScore {
            word: w.to_string(),
            score,
        })
        .collect();
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.word.cmp(&b.word)));
    ranked.truncate(n);
    ranked
}

/// Crowd annotations from which a lexicon can be derived.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationMatrices {
    /// Row labels of `word_document`; plain words or `word#p` keys.
    pub words: Vec<String>,
    /// words × documents
    pub word_document: Vec<Vec<f64>>,
    /// documents × 8
    pub doc_emotion: Vec<[f64; N_EMOTIONS]>,
}

/// Multiplies word-document by document-emotion and rescales each word's row
/// by its maximum so all scores land in `[0, 1]`. All-zero rows are dropped.
pub fn derive_lexicon(m: &AnnotationMatrices) -> Result<EmotionLexicon> {
    let n_docs = m.doc_emotion.len();
    if m.words.len() != m.word_document.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} words for {} word-document rows",
            m.words.len(),
            m.word_document.len()
        )));
    }
    if let Some(row) = m.word_document.iter().find(|r| r.len() != n_docs) {
        return Err(Error::DimensionMismatch(format!(
            "word-document row has {} columns, document-emotion has {n_docs} rows",
            row.len()
        )));
    }
    let all = m
        .word_document
        .iter()
        .flatten()
        .chain(m.doc_emotion.iter().flatten());
    if all.clone().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidParameter(
            "annotation matrices must be finite and nonnegative".into(),
        ));
    }

    let mut entries = Vec::new();
    let mut any_pos = false;
    for (word, row) in m.words.iter().zip(&m.word_document) {
        let mut product = [0.0; N_EMOTIONS];
        for (weight, emotions) in row.iter().zip(&m.doc_emotion) {
            for (p, e) in product.iter_mut().zip(emotions) {
                *p += weight * e;
            }
        }
        let max = product.iter().copied().fold(0.0, f64::max);
        if max == 0.0 {
            continue;
        }
        let key = LexiconKey::parse(word).map_err(Error::InvalidParameter)?;
        any_pos |= key.pos.is_some();
        entries.push((key, product.map(|v| v / max)));
    }
    EmotionLexicon::from_entries(any_pos, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tok(word: &str, pos: Pos) -> Token {
        Token {
            surface: word.into(),
            normalized: word.into(),
            pos,
        }
    }

    fn doc(tokens: Vec<Token>) -> PreparedDocument {
        PreparedDocument {
            doc_id: "d".into(),
            tokens,
        }
    }

    fn unit(e: Emotion) -> [f64; N_EMOTIONS] {
        let mut v = [0.0; N_EMOTIONS];
        v[e.index()] = 1.0;
        v
    }

    fn key(w: &str) -> LexiconKey {
        LexiconKey::parse(w).unwrap()
    }

    fn parse(text: &str, pos_aware: bool) -> Result<EmotionLexicon> {
        EmotionLexicon::parse_tsv(text, pos_aware, Path::new("lex.tsv"))
    }

    const HEADER: &str = "word\tAFRAID\tAMUSED\tANGRY\tANNOYED\tDONT_CARE\tHAPPY\tINSPIRED\tSAD\n";

    #[test]
    fn emotion_names() {
        assert_eq!("DON'T CARE".parse::<Emotion>().unwrap(), Emotion::DontCare);
        assert_eq!("inspired".parse::<Emotion>().unwrap(), Emotion::Inspired);
        assert!("bored".parse::<Emotion>().is_err());
    }

    #[test]
    fn loads_pos_keys() {
        let text = format!("{HEADER}serenity#n\t0.1\t0\t0\t0\t0\t0.2\t0.9\t0\n");
        let lex = parse(&text, true).unwrap();
        let s = lex.get("serenity", Some(Pos::Noun)).unwrap();
        assert_eq!(s.get(Emotion::Inspired), 0.9);
        assert_eq!(s.get(Emotion::Afraid), 0.1);
        assert!(lex.get("serenity", Some(Pos::Verb)).is_none());
    }

    #[test]
    fn out_of_range_names_line() {
        let text = format!("{HEADER}ok\t0\t0\t0\t0\t0\t0\t0\t0\nbad\t1.2\t0\t0\t0\t0\t0\t0\t0\n");
        let err = parse(&text, false).unwrap_err();
        assert!(err.to_string().contains(":3:"), "{err}");
    }

    #[test]
    fn malformed_and_duplicate_rows() {
        let short = format!("{HEADER}w\t0\t0\n");
        assert!(parse(&short, false).is_err());
        let dup = format!("{HEADER}w\t0\t0\t0\t0\t0\t0\t0\t0\nW\t0\t0\t0\t0\t0\t0\t0\t0\n");
        assert!(parse(&dup, false).unwrap_err().to_string().contains("duplicate"));
        assert!(parse("word\tAFRAID\n", false).is_err());
    }

    #[test]
    fn empty_lexicon_leaves_profiles_undefined() {
        let lex = parse(HEADER, true).unwrap();
        assert!(lex.is_empty());
        let p = score_document(&doc(vec![tok("joy", Pos::Noun)]), &lex);
        assert!(!p.defined);
        assert_eq!(p.matched_tokens, 0);
        assert!(p.scores.0.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn token_mode_merges_pos_variants() {
        let text = format!(
            "{HEADER}hope#n\t0\t0\t0\t0\t0\t0\t1\t0\nhope#v\t0\t0\t0\t0\t0\t1\t0\t0\n"
        );
        let lex = parse(&text, false).unwrap();
        let s = lex.get("hope", None).unwrap();
        assert_eq!(s.get(Emotion::Inspired), 0.5);
        assert_eq!(s.get(Emotion::Happy), 0.5);
    }

    #[test]
    fn two_word_profile() {
        let lex = EmotionLexicon::from_entries(
            false,
            [(key("w1"), unit(Emotion::Afraid)), (key("w2"), unit(Emotion::Inspired))],
        )
        .unwrap();
        let p = score_document(&doc(vec![tok("w1", Pos::Noun), tok("w2", Pos::Noun)]), &lex);
        assert!(p.defined);
        assert_eq!(p.scores.0, [0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0]);
        assert_eq!((p.matched_tokens, p.total_tokens), (2, 2));
    }

    #[test]
    fn pos_aware_requires_matching_tag() {
        let entries = [(key("fight#v"), unit(Emotion::Angry))];
        let aware = EmotionLexicon::from_entries(true, entries.clone()).unwrap();
        let plain = EmotionLexicon::from_entries(false, entries).unwrap();
        let d = doc(vec![tok("fight", Pos::Noun), tok("fight", Pos::Verb)]);
        assert_eq!(score_document(&d, &aware).matched_tokens, 1);
        assert_eq!(score_document(&d, &plain).matched_tokens, 2);
    }

    #[test]
    fn scaling_cancels() {
        let lex = EmotionLexicon::from_entries(
            false,
            [
                (key("a"), [0.25, 0.5, 0.0, 0.125, 0.0, 0.75, 1.0, 0.0]),
                (key("b"), [0.0, 0.0, 0.5, 0.0, 0.25, 0.0, 0.375, 0.0625]),
            ],
        )
        .unwrap();
        let d = doc(vec![tok("a", Pos::Noun), tok("b", Pos::Noun), tok("a", Pos::Noun)]);
        let scaled = lex.map_scores(|v| v * 10.0);
        assert_eq!(score_document(&d, &lex), score_document(&d, &scaled));
    }

    #[test]
    fn aggregate_mean() {
        let lex = EmotionLexicon::from_entries(
            false,
            [(key("x"), unit(Emotion::Afraid)), (key("y"), unit(Emotion::Amused))],
        )
        .unwrap();
        let p1 = score_document(&doc(vec![tok("x", Pos::Noun)]), &lex);
        let p2 = score_document(&doc(vec![tok("y", Pos::Noun)]), &lex);
        let none = score_document(&doc(vec![tok("z", Pos::Noun)]), &lex);

        let single = aggregate_corpus(std::slice::from_ref(&p1)).unwrap();
        assert_eq!(single.profile.scores, p1.scores);

        let agg = aggregate_corpus(&[p1, p2, none.clone()]).unwrap();
        assert_eq!(agg.profile.scores.0, [0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(agg.undefined_documents, 1);
        assert_eq!(agg.documents, 3);

        assert!(aggregate_corpus(&[none]).is_err());
    }

    #[test]
    fn micro_pooling_weights_by_tokens() {
        let lex = EmotionLexicon::from_entries(
            false,
            [(key("x"), unit(Emotion::Afraid)), (key("y"), unit(Emotion::Amused))],
        )
        .unwrap();
        let docs = [
            doc(vec![tok("x", Pos::Noun), tok("x", Pos::Noun), tok("x", Pos::Noun)]),
            doc(vec![tok("y", Pos::Noun)]),
        ];
        let micro = corpus_emotion(&docs, &lex, Pooling::Micro).unwrap();
        assert_eq!(micro.profile.scores.get(Emotion::Afraid), 0.75);
        let macro_ = corpus_emotion(&docs, &lex, Pooling::Macro).unwrap();
        assert_eq!(macro_.profile.scores.get(Emotion::Afraid), 0.5);
    }

    #[test]
    fn top_words_rank_and_truncate() {
        let mut a = [0.0; N_EMOTIONS];
        a[Emotion::Inspired.index()] = 0.8;
        let mut b = a;
        b[Emotion::Inspired.index()] = 0.3;
        let lex = EmotionLexicon::from_entries(
            false,
            [(key("faith"), a), (key("hope"), a), (key("war"), b), (key("absent"), a)],
        )
        .unwrap();
        let d = doc(vec![
            tok("war", Pos::Noun),
            tok("hope", Pos::Noun),
            tok("faith", Pos::Noun),
            tok("hope", Pos::Noun),
        ]);
        let top = top_emotion_words(std::slice::from_ref(&d), &lex, Emotion::Inspired, 10);
        let words: Vec<_> = top.iter().map(|w| w.word.as_str()).collect();
        assert_eq!(words, ["faith", "hope", "war"]);
        assert_eq!(top_emotion_words(&[d], &lex, Emotion::Inspired, 2).len(), 2);

        let unrelated = doc(vec![tok("table", Pos::Noun)]);
        assert!(top_emotion_words(&[unrelated], &lex, Emotion::Inspired, 10).is_empty());
    }

    #[test]
    fn derive_identity() {
        let m = AnnotationMatrices {
            words: vec!["alpha".into(), "beta".into()],
            word_document: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            doc_emotion: vec![
                [0.2, 0.4, 0.0, 0.0, 0.0, 0.0, 0.8, 0.0],
                [1.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0],
            ],
        };
        let lex = derive_lexicon(&m).unwrap();
        assert_eq!(lex.get("alpha", None).unwrap().0, [0.25, 0.5, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(lex.get("beta", None).unwrap().0, m.doc_emotion[1]);
    }

    #[test]
    fn derive_drops_zero_rows_and_checks_shape() {
        let m = AnnotationMatrices {
            words: vec!["gone".into(), "kept".into()],
            word_document: vec![vec![0.0], vec![2.0]],
            doc_emotion: vec![[0.5; N_EMOTIONS]],
        };
        let lex = derive_lexicon(&m).unwrap();
        assert!(lex.get("gone", None).is_none());
        assert_eq!(lex.get("kept", None).unwrap().0, [1.0; N_EMOTIONS]);

        let bad = AnnotationMatrices {
            word_document: vec![vec![0.0, 1.0], vec![2.0]],
            ..m
        };
        assert!(matches!(derive_lexicon(&bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn tsv_round_trip() {
        let lex = EmotionLexicon::from_entries(
            true,
            [(key("calm#a"), [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]), (key("storm"), [0.0; 8])],
        )
        .unwrap();
        let mut out = Vec::new();
        lex.write_tsv(&mut out).unwrap();
        let back = parse(std::str::from_utf8(&out).unwrap(), true).unwrap();
        assert_eq!(back, lex);
    }

    #[test]
    fn scores_serialize_by_name() {
        let s = EmotionScores([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with("{\"AFRAID\":0.0"));
        assert!(json.contains("\"DONT_CARE\":0.0"));
        let back: EmotionScores = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
