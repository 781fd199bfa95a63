use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{svg, ComparisonReport};
use crate::emotion::Emotion;
use crate::pipeline::TopicSection;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Json,
    Csv,
    Md,
    Svg,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::Json, Format::Csv, Format::Md, Format::Svg];

    /// Parses a comma-separated list such as `json,csv,md,svg`.
    pub fn parse_list(s: &str) -> std::result::Result<Vec<Format>, String> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            "svg" => Ok(Format::Svg),
            _ => Err(format!("unknown format `{s}` (expected json, csv, md or svg)")),
        }
    }
}

/// Writes the report in each format into `out_dir`, returning the files
/// written.
pub fn render(report: &ComparisonReport, formats: &[Format], out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    for format in formats {
        match format {
            Format::Json => files.push(("report.json".into(), report.to_json()?.into_bytes())),
            Format::Csv => files.extend(csv_files(report)?),
            Format::Md => files.push(("report.md".into(), markdown(report).into_bytes())),
            Format::Svg => files.extend(svg_files(report)),
        }
    }
    let mut written = Vec::with_capacity(files.len());
    for (name, bytes) in files {
        let path = out_dir.join(name);
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

fn csv_bytes(header: &[&str], rows: Vec<Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::InvalidParameter(format!("csv: {e}"));
    w.write_record(header).map_err(to_err)?;
    for row in rows {
        w.write_record(&row).map_err(to_err)?;
    }
    w.into_inner()
        .map_err(|e| Error::InvalidParameter(format!("csv: {e}")))
}

fn emotion_header(prefix: &[&'static str], suffix: &[&'static str]) -> Vec<&'static str> {
    let mut h = prefix.to_vec();
    h.extend(Emotion::ALL.iter().map(|e| e.as_str()));
    h.extend_from_slice(suffix);
    h
}

fn csv_files(report: &ComparisonReport) -> Result<Vec<(String, Vec<u8>)>> {
    let mut files = Vec::new();

    let rows = report
        .frequency_tables
        .iter()
        .flat_map(|t| {
            t.rows.iter().enumerate().map(move |(i, r)| {
                vec![
                    t.label.clone(),
                    (i + 1).to_string(),
                    r.term.clone(),
                    r.frequency.to_string(),
                ]
            })
        })
        .collect();
    files.push((
        "frequencies.csv".into(),
        csv_bytes(&["label", "rank", "term", "frequency"], rows)?,
    ));

    let rows = report
        .topic_summaries
        .iter()
        .flat_map(|s| {
            s.summaries.iter().flat_map(move |topic| {
                topic.top_terms.iter().enumerate().map(move |(i, tw)| {
                    vec![
                        s.label.clone(),
                        topic.topic_id.to_string(),
                        (i + 1).to_string(),
                        tw.term.clone(),
                        tw.weight.to_string(),
                    ]
                })
            })
        })
        .collect();
    files.push((
        "topics.csv".into(),
        csv_bytes(&["label", "topic", "rank", "term", "weight"], rows)?,
    ));

    let rows = report
        .topic_summaries
        .iter()
        .flat_map(|s| {
            s.coherence.iter().enumerate().map(move |(z, c)| {
                vec![s.label.clone(), z.to_string(), c.to_string()]
            })
        })
        .collect();
    files.push((
        "coherence.csv".into(),
        csv_bytes(&["label", "topic", "umass"], rows)?,
    ));

    if let Some(emotions) = &report.emotion_profiles {
        let rows = emotions
            .iter()
            .map(|e| {
                let mut row = vec![e.label.clone()];
                row.extend(e.corpus.profile.scores.0.iter().map(f64::to_string));
                row.push(e.corpus.documents.to_string());
                row.push(e.corpus.undefined_documents.to_string());
                row
            })
            .collect();
        files.push((
            "emotions.csv".into(),
            csv_bytes(
                &emotion_header(&["label"], &["documents", "undefined_documents"]),
                rows,
            )?,
        ));

        let rows = emotions
            .iter()
            .flat_map(|e| {
                e.top_words.iter().enumerate().map(move |(i, w)| {
                    vec![
                        e.label.clone(),
                        e.top_emotion.to_string(),
                        (i + 1).to_string(),
                        w.word.clone(),
                        w.score.to_string(),
                    ]
                })
            })
            .collect();
        files.push((
            "emotion_words.csv".into(),
            csv_bytes(&["label", "emotion", "rank", "word", "score"], rows)?,
        ));
    }

    if let Some(per_doc) = &report.per_document_profiles {
        let rows = per_doc
            .iter()
            .flat_map(|g| {
                g.documents.iter().map(move |d| {
                    let mut row = vec![g.label.clone(), d.doc_id.clone()];
                    row.extend(d.profile.scores.0.iter().map(f64::to_string));
                    row.push(d.profile.defined.to_string());
                    row.push(d.profile.matched_tokens.to_string());
                    row.push(d.profile.total_tokens.to_string());
                    row
                })
            })
            .collect();
        files.push((
            "document_emotions.csv".into(),
            csv_bytes(
                &emotion_header(
                    &["label", "doc_id"],
                    &["defined", "matched_tokens", "total_tokens"],
                ),
                rows,
            )?,
        ));
    }
    Ok(files)
}

fn svg_files(report: &ComparisonReport) -> Vec<(String, Vec<u8>)> {
    let mut files = vec![(
        "frequencies.svg".to_string(),
        svg::frequency_chart(&report.frequency_tables).into_bytes(),
    )];
    if let Some(emotions) = &report.emotion_profiles {
        files.push((
            "emotions.svg".into(),
            svg::emotion_chart(emotions).into_bytes(),
        ));
    }
    if let Some(per_doc) = &report.per_document_profiles {
        for group in per_doc {
            files.push((
                format!("document_emotions_{}.svg", file_safe(&group.label)),
                svg::document_emotion_chart(group).into_bytes(),
            ));
        }
    }
    files
}

fn file_safe(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

/// Markdown grid with one column per topic, headed by its label (or
/// `Topic n`) and coherence, and one row per term rank.
pub fn topic_table(section: &TopicSection) -> String {
    let mut out = String::from("|");
    for (z, c) in section.coherence.iter().enumerate() {
        let label = section.summaries[z]
            .label
            .clone()
            .unwrap_or_else(|| format!("Topic {}", z + 1));
        let _ = write!(out, " {} ({:.2}) |", md_escape(&label), c);
    }
    out.push_str("\n|");
    for _ in &section.summaries {
        out.push_str("---|");
    }
    out.push('\n');
    let depth = section
        .summaries
        .iter()
        .map(|s| s.top_terms.len())
        .max()
        .unwrap_or(0);
    for i in 0..depth {
        out.push('|');
        for s in &section.summaries {
            let cell = s.top_terms.get(i).map(|t| md_escape(&t.term));
            let _ = write!(out, " {} |", cell.unwrap_or_default());
        }
        out.push('\n');
    }
    out
}

fn markdown(report: &ComparisonReport) -> String {
    let mut out = String::new();
    out.push_str("# Corpus comparison\n\n");

    out.push_str("| corpus | baseline | documents | tokens | vocabulary |\n|---|---|---:|---:|---:|\n");
    for c in &report.corpora {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} |",
            md_escape(&c.label),
            if c.baseline { "yes" } else { "" },
            c.stats.documents,
            c.stats.tokens,
            c.stats.vocabulary
        );
    }

    out.push_str("\n## Most frequent words\n\nFrequencies are proportions of all tokens in each corpus.\n\n");
    let tables = &report.frequency_tables;
    let depth = tables.iter().map(|t| t.rows.len()).max().unwrap_or(0);
    out.push_str("| rank |");
    for t in tables {
        let _ = write!(out, " {} | |", md_escape(&t.label));
    }
    out.push_str("\n|---:|");
    for _ in tables {
        out.push_str("---|---:|");
    }
    out.push('\n');
    for i in 0..depth {
        let _ = write!(out, "| {} |", i + 1);
        for t in tables {
            match t.rows.get(i) {
                Some(r) => {
                    let _ = write!(out, " {} | {:.5} |", md_escape(&r.term), r.frequency);
                }
                None => out.push_str(" | |"),
            }
        }
        out.push('\n');
    }

    for section in &report.topic_summaries {
        let _ = writeln!(
            out,
            "\n## Topics: {} ({:?}, k = {})\n",
            md_escape(&section.label),
            section.method,
            section.k
        );
        out.push_str(&topic_table(section));
        let _ = writeln!(out, "\nMean UMass coherence: {:.4}", section.mean_coherence);
    }

    if let Some(emotions) = &report.emotion_profiles {
        out.push_str("\n## Evoked emotions\n\n| emotion |");
        for e in emotions {
            let _ = write!(out, " {} |", md_escape(&e.label));
        }
        out.push_str("\n|---|");
        for _ in emotions {
            out.push_str("---:|");
        }
        out.push('\n');
        for emotion in Emotion::ALL {
            let _ = write!(out, "| {emotion} |");
            for e in emotions {
                let _ = write!(out, " {:.4} |", e.corpus.profile.scores.get(emotion));
            }
            out.push('\n');
        }

        if let Some(first) = emotions.first() {
            let _ = writeln!(out, "\n## Words with highest {} scores\n", first.top_emotion);
        }
        out.push('|');
        for e in emotions {
            let _ = write!(out, " {} |", md_escape(&e.label));
        }
        out.push_str("\n|");
        for _ in emotions {
            out.push_str("---|");
        }
        out.push('\n');
        let depth = emotions.iter().map(|e| e.top_words.len()).max().unwrap_or(0);
        for i in 0..depth {
            out.push('|');
            for e in emotions {
                let cell = e.top_words.get(i).map(|w| md_escape(&w.word));
                let _ = write!(out, " {} |", cell.unwrap_or_default());
            }
            out.push('\n');
        }
    } else {
        out.push_str("\n## Evoked emotions\n\nNo lexicon supplied.\n");
    }
    out
}
