//! Static SVG charts written as plain markup.
//!
//! Every mark carries a `data-value` attribute with the number it encodes so
//! charts can be checked against the report they were drawn from.

use std::fmt::Write as _;

use super::{CorpusEmotionEntry, DocumentProfiles, FrequencyTable};
use crate::emotion::Emotion;

const PALETTE: &[&str] = &[
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f",
];

const FONT: &str = "font-family=\"sans-serif\" font-size=\"12\"";

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n<rect x=\"0\" y=\"0\" width=\"{width}\" \
         height=\"{height}\" fill=\"white\"/>\n"
    )
}

fn scale_max(values: impl Iterator<Item = f64>) -> f64 {
    let max = values.fold(0.0, f64::max);
    if max > 0.0 {
        max
    } else {
        1.0
    }
}

/// Grouped bars: one group per emotion, one bar per corpus.
pub fn emotion_chart(entries: &[CorpusEmotionEntry]) -> String {
    let (left, top, plot_w, plot_h) = (60.0, 40.0, 800.0, 300.0);
    let legend_h = 20.0 * entries.len() as f64;
    let width = left + plot_w + 20.0;
    let height = top + plot_h + 60.0 + legend_h;
    let max = scale_max(
        entries
            .iter()
            .flat_map(|e| e.corpus.profile.scores.0.into_iter()),
    );

    let mut s = open(width, height);
    let _ = writeln!(
        s,
        "<text x=\"{left}\" y=\"24\" {FONT} font-weight=\"bold\">Evoked emotion profile (proportion)</text>"
    );
    let base = top + plot_h;
    let _ = writeln!(
        s,
        "<line x1=\"{left}\" y1=\"{base}\" x2=\"{}\" y2=\"{base}\" stroke=\"black\"/>",
        left + plot_w
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" {FONT} text-anchor=\"end\">{max:.3}</text>",
        left - 6.0,
        top + 4.0
    );

    let group_w = plot_w / Emotion::ALL.len() as f64;
    let bar_w = group_w * 0.8 / entries.len().max(1) as f64;
    for (g, emotion) in Emotion::ALL.iter().enumerate() {
        let gx = left + g as f64 * group_w + group_w * 0.1;
        for (i, entry) in entries.iter().enumerate() {
            let value = entry.corpus.profile.scores.get(*emotion);
            let h = value / max * plot_h;
            let _ = writeln!(
                s,
                "<rect class=\"bar\" data-series=\"{}\" data-emotion=\"{emotion}\" data-value=\"{value}\" \
                 x=\"{:.4}\" y=\"{:.4}\" width=\"{:.4}\" height=\"{h:.4}\" fill=\"{}\"/>",
                escape(&entry.label),
                gx + i as f64 * bar_w,
                base - h,
                bar_w,
                color(i)
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{}\" {FONT} text-anchor=\"middle\">{emotion}</text>",
            gx + group_w * 0.4,
            base + 18.0
        );
    }
    legend(&mut s, entries.iter().map(|e| e.label.as_str()), left, base + 40.0);
    s.push_str("</svg>\n");
    s
}

fn legend<'a>(s: &mut String, labels: impl Iterator<Item = &'a str>, x: f64, y: f64) {
    for (i, label) in labels.enumerate() {
        let ly = y + 20.0 * i as f64;
        let _ = writeln!(
            s,
            "<rect class=\"legend\" x=\"{x}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>\
             <text x=\"{}\" y=\"{}\" {FONT}>{}</text>",
            ly - 10.0,
            color(i),
            x + 18.0,
            ly,
            escape(label)
        );
    }
}

/// Horizontal bars of the most frequent words, one panel per corpus.
pub fn frequency_chart(tables: &[FrequencyTable]) -> String {
    let (left, bar_h, label_w, plot_w) = (20.0, 16.0, 120.0, 500.0);
    let panel_h = |t: &FrequencyTable| 40.0 + bar_h * t.rows.len() as f64 + 10.0;
    let height = 20.0 + tables.iter().map(panel_h).sum::<f64>();
    let width = left + label_w + plot_w + 120.0;
    let max = scale_max(tables.iter().flat_map(|t| t.rows.iter().map(|r| r.frequency)));

    let mut s = open(width, height);
    let mut y = 20.0;
    for (i, t) in tables.iter().enumerate() {
        let _ = writeln!(
            s,
            "<text x=\"{left}\" y=\"{}\" {FONT} font-weight=\"bold\">{} (proportion of {} tokens)</text>",
            y + 16.0,
            escape(&t.label),
            t.total_tokens
        );
        for (r, row) in t.rows.iter().enumerate() {
            let ry = y + 30.0 + r as f64 * bar_h;
            let w = row.frequency / max * plot_w;
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{:.2}\" {FONT} text-anchor=\"end\">{}</text>\
                 <rect class=\"bar\" data-series=\"{}\" data-term=\"{}\" data-value=\"{}\" \
                 x=\"{}\" y=\"{ry:.2}\" width=\"{w:.4}\" height=\"{}\" fill=\"{}\"/>\
                 <text x=\"{:.2}\" y=\"{:.2}\" {FONT}>{:.4}</text>",
                left + label_w - 6.0,
                ry + bar_h - 4.0,
                escape(&row.term),
                escape(&t.label),
                escape(&row.term),
                row.frequency,
                left + label_w,
                bar_h - 3.0,
                color(i),
                left + label_w + w + 4.0,
                ry + bar_h - 4.0,
                row.frequency
            );
        }
        y += panel_h(t);
    }
    s.push_str("</svg>\n");
    s
}

/// One line per emotion across the documents of a corpus, in id order.
/// Documents without any lexicon match are left out.
pub fn document_emotion_chart(group: &DocumentProfiles) -> String {
    let docs: Vec<_> = group.documents.iter().filter(|d| d.profile.defined).collect();
    let (left, top, plot_h) = (60.0, 40.0, 300.0);
    let step = 40.0;
    let plot_w = step * docs.len().max(1) as f64;
    let width = left + plot_w + 160.0;
    let height = top + plot_h + 100.0;
    let max = scale_max(docs.iter().flat_map(|d| d.profile.scores.0.into_iter()));
    let base = top + plot_h;

    let mut s = open(width, height);
    let _ = writeln!(
        s,
        "<text x=\"{left}\" y=\"24\" {FONT} font-weight=\"bold\">{}: emotion per document</text>",
        escape(&group.label)
    );
    let _ = writeln!(
        s,
        "<line x1=\"{left}\" y1=\"{base}\" x2=\"{}\" y2=\"{base}\" stroke=\"black\"/>",
        left + plot_w
    );
    for (i, d) in docs.iter().enumerate() {
        let x = left + step * (i as f64 + 0.5);
        let _ = writeln!(
            s,
            "<text x=\"{x:.2}\" y=\"{}\" {FONT} text-anchor=\"end\" transform=\"rotate(-45 {x:.2} {})\">{}</text>",
            base + 14.0,
            base + 14.0,
            escape(&d.doc_id)
        );
    }
    for (e, emotion) in Emotion::ALL.iter().enumerate() {
        let points: Vec<(f64, f64, f64)> = docs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let v = d.profile.scores.get(*emotion);
                (left + step * (i as f64 + 0.5), base - v / max * plot_h, v)
            })
            .collect();
        let path: Vec<String> = points.iter().map(|(x, y, _)| format!("{x:.2},{y:.4}")).collect();
        let _ = writeln!(
            s,
            "<polyline class=\"series\" data-emotion=\"{emotion}\" points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>",
            path.join(" "),
            color(e)
        );
        for ((x, y, v), d) in points.iter().zip(&docs) {
            let _ = writeln!(
                s,
                "<circle class=\"point\" data-emotion=\"{emotion}\" data-doc=\"{}\" data-value=\"{v}\" cx=\"{x:.2}\" cy=\"{y:.4}\" r=\"3\" fill=\"{}\"/>",
                escape(&d.doc_id),
                color(e)
            );
        }
    }
    legend(
        &mut s,
        Emotion::ALL.iter().map(|e| e.as_str()),
        left + plot_w + 20.0,
        top + 10.0,
    );
    s.push_str("</svg>\n");
    s
}
