use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corpus-lens"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fx(rel: &str) -> String {
    fixtures().join(rel).to_string_lossy().into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn report_args<'a>(out: &'a str, lexicon: &'a str, corpora: &'a [String; 3]) -> Vec<&'a str> {
    vec![
        "report",
        "--corpus", &corpora[0],
        "--corpus", &corpora[1],
        "--baseline", &corpora[2],
        "--lexicon", lexicon,
        "--k", "3",
        "--seed", "42",
        "--out-dir", out,
        "--format", "json,csv,md,svg",
    ]
}

#[test]
fn ingest_writes_stats() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("stats.json");
    let root = fixtures();
    let o = run(&["ingest", "--root", root.to_str().unwrap(), "--label", "newswire", "--stats-out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stats = read_json(&out);
    assert_eq!(stats["label"], "newswire");
    assert_eq!(stats["documents"], 6);
    let per_doc: u64 = stats["tokens_per_document"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(stats["tokens"].as_u64().unwrap(), per_doc);
}

#[test]
fn topics_json_table_and_sweep() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("topics.json");
    let o = run(&[
        "topics", "--corpus", &fx("newswire"), "--label", "news", "--method", "nmf", "--k", "3",
        "--top", "5", "--out", out.to_str().unwrap(), "--table", "md", "--k-range", "2-4",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_json(&out);
    assert_eq!(t["label"], "news");
    assert_eq!(t["summaries"].as_array().unwrap().len(), 3);
    assert_eq!(t["summaries"][0]["top_terms"].as_array().unwrap().len(), 5);
    assert!(t["objective_trace"].as_array().unwrap().len() >= 2);
    let ks: Vec<u64> = t["coherence_by_k"].as_array().unwrap().iter().map(|e| e["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, [2, 3, 4]);

    let table = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 2 + 5);
    assert!(lines[0].starts_with("| Topic 1 ("));
}

#[test]
fn lda_topics_have_no_objective_trace() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("topics.json");
    let o = run(&[
        "topics", "--corpus", &fx("inspired"), "--method", "lda", "--k", "2", "--iterations", "50",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_json(&out);
    assert_eq!(t["label"], "inspired");
    assert_eq!(t["method"], "lda");
    assert!(t.get("objective_trace").is_none());
}

#[test]
fn emotions_with_pos_lexicon() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("emotions.json");
    let o = run(&[
        "emotions", "--corpus", &fx("devotional"), "--lexicon", &fx("lexicon_pos.tsv"), "--pos",
        "--pooling", "micro", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let e = read_json(&out);
    assert_eq!(e["corpus"]["pooling"], "micro");
    let sum: f64 = e["corpus"]["profile"]["scores"].as_object().unwrap().values().map(|v| v.as_f64().unwrap()).sum();
    assert!((sum - 1.0).abs() < 1e-9);
}

#[test]
fn report_reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let corpora = [
        format!("{}:inspired", fx("inspired")),
        format!("{}:devotional", fx("devotional")),
        format!("{}:newswire", fx("newswire")),
    ];
    let lexicon = fx("lexicon.tsv");
    let mut jsons = Vec::new();
    for run_id in ["a", "b"] {
        let dir = tmp.path().join(run_id);
        let o = run(&report_args(dir.to_str().unwrap(), &lexicon, &corpora));
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        for name in ["report.json", "emotions.csv", "report.md", "emotions.svg", "document_emotions_newswire.svg"] {
            assert!(dir.join(name).is_file(), "{name}");
        }
        jsons.push(fs::read(dir.join("report.json")).unwrap());
    }
    assert_eq!(jsons[0], jsons[1]);
    let report: Value = serde_json::from_slice(&jsons[0]).unwrap();
    assert_eq!(report["corpora"][2]["baseline"], true);
}

#[test]
fn validation_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("x.json");
    let out = out.to_str().unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["topics".into(), "--corpus".into(), fx("inspired"), "--k".into(), "0".into(), "--out".into(), out.into()],
        vec!["topics".into(), "--corpus".into(), fx("inspired"), "--method".into(), "pca".into(), "--out".into(), out.into()],
        vec!["emotions".into(), "--corpus".into(), fx("inspired"), "--lexicon".into(), fx("inspired/issue01.txt"), "--out".into(), out.into()],
        vec!["report".into(), "--corpus".into(), format!("{}:same", fx("inspired")), "--corpus".into(), format!("{}:same", fx("newswire")), "--out-dir".into(), tmp.path().to_string_lossy().into_owned()],
        vec!["report".into(), "--corpus".into(), fx("inspired"), "--format".into(), "json,pdf".into(), "--out-dir".into(), tmp.path().to_string_lossy().into_owned()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert!(!Path::new(out).exists());
}

#[test]
fn io_errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("x.json");
    let o = run(&["topics", "--corpus", "/no/such/dir", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["emotions", "--corpus", &fx("inspired"), "--lexicon", "/no/such.tsv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
