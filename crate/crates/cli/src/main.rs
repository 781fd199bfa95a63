use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use corpus_lens::emotion::{load_lexicon, Pooling};
use corpus_lens::ingest::{corpus_stats, load_corpus};
use corpus_lens::pipeline::{Pipeline, PipelineConfig, TopicMethod};
use corpus_lens::report::{build_report, render, topic_table, Format, ReportInput};
use corpus_lens::textprep::StopList;
use corpus_lens::topics::NmfInit;
use corpus_lens::{Corpus, Error};

#[derive(Parser)]
#[command(name = "corpus-lens", version, about = "Topic and evoked-emotion analysis of labeled text corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load `<root>/<label>/*.txt` and write corpus statistics.
    Ingest {
        #[arg(long)]
        root: PathBuf,
        #[arg(long)]
        label: String,
        #[arg(long, value_name = "FILE")]
        stats_out: PathBuf,
        #[arg(long, value_name = "FILE")]
        stoplist: Option<PathBuf>,
    },
    /// Fit NMF or LDA topics for one corpus.
    Topics {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        /// Defaults to the directory name.
        #[arg(long)]
        label: Option<String>,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 20)]
        top: usize,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Also print the topic grid to stdout.
        #[arg(long, value_parser = ["md"])]
        table: Option<String>,
        /// Topic counts for a coherence sweep, e.g. `2-12` or `5,10,15`.
        #[arg(long, value_name = "KS", value_parser = parse_k_range)]
        k_range: Option<TopicCounts>,
    },
    /// Score a corpus against an emotion lexicon.
    Emotions {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long)]
        label: Option<String>,
        #[arg(long, value_name = "TSV")]
        lexicon: PathBuf,
        /// Lexicon keys carry parts of speech (`word#n`).
        #[arg(long)]
        pos: bool,
        #[arg(long, default_value = "macro", value_parser = parse_via::<Pooling>)]
        pooling: Pooling,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long, value_name = "FILE")]
        stoplist: Option<PathBuf>,
    },
    /// Compare several corpora and render a report.
    Report {
        /// `<dir>:<label>`; repeatable.
        #[arg(long = "corpus", value_name = "DIR:LABEL", required = true)]
        corpora: Vec<String>,
        #[arg(long, value_name = "DIR:LABEL")]
        baseline: Option<String>,
        #[arg(long, value_name = "TSV")]
        lexicon: Option<PathBuf>,
        #[arg(long)]
        pos: bool,
        #[arg(long, default_value = "macro", value_parser = parse_via::<Pooling>)]
        pooling: Pooling,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 20)]
        top: usize,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
        #[arg(long, default_value = "json,csv,md,svg", value_parser = parse_formats)]
        format: Formats,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, default_value = "nmf", value_parser = parse_via::<TopicMethod>)]
    method: TopicMethod,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    min_df: usize,
    #[arg(long, default_value = "nndsvd", value_parser = parse_via::<NmfInit>)]
    init: NmfInit,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// LDA document prior; defaults to 50 / k.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    beta: f64,
    /// LDA Gibbs sweeps.
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    #[arg(long, value_name = "FILE")]
    stoplist: Option<PathBuf>,
}

impl ModelArgs {
    fn config(&self, top_terms: usize) -> PipelineConfig {
        PipelineConfig {
            method: self.method,
            k: self.k,
            seed: self.seed,
            top_terms,
            min_df: self.min_df,
            nmf_max_iter: self.max_iter,
            nmf_tol: self.tol,
            nmf_init: self.init,
            lda_alpha: self.alpha,
            lda_beta: self.beta,
            lda_iterations: self.iterations,
            ..Default::default()
        }
    }
}

fn parse_via<T: std::str::FromStr<Err = String>>(s: &str) -> Result<T, String> {
    s.parse()
}

#[derive(Clone)]
struct TopicCounts(Vec<usize>);

#[derive(Clone)]
struct Formats(Vec<Format>);

fn parse_formats(s: &str) -> Result<Formats, String> {
    Format::parse_list(s).map(Formats)
}

fn parse_k_range(s: &str) -> Result<TopicCounts, String> {
    let bad = || format!("invalid topic counts `{s}` (expected e.g. 2-12 or 5,10,15)");
    let ks: Vec<usize> = match s.split_once('-') {
        Some((a, b)) => {
            let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            (a..=b).collect()
        }
        None => s
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?,
    };
    if ks.is_empty() || ks.contains(&0) {
        return Err(bad());
    }
    Ok(TopicCounts(ks))
}

/// Command failure with its exit status: 1 for I/O, 2 for invalid input.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_io() { 1 } else { 2 },
            message: e.to_string(),
        }
    }
}

fn invalid(message: String) -> Failure {
    Failure { code: 2, message }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Failure {
            code: 1,
            message: format!("{}: {e}", parent.display()),
        })?;
    }
    fs::write(path, contents).map_err(|e| Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn pipeline(config: PipelineConfig, stoplist: Option<&Path>) -> Result<Pipeline, Failure> {
    let mut p = Pipeline::new(config);
    if let Some(path) = stoplist {
        p = p.with_stoplist(StopList::from_file(path)?);
    }
    Ok(p)
}

fn dir_label(dir: &Path, label: Option<&str>) -> Result<String, Failure> {
    match label {
        Some(l) => Ok(l.to_string()),
        None => dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .ok_or_else(|| invalid(format!("{}: cannot infer a label, pass --label", dir.display()))),
    }
}

/// Splits `dir:label` at the last colon; a bare directory uses its name.
fn parse_corpus_arg(arg: &str) -> Result<Corpus, Failure> {
    let (dir, label) = match arg.rsplit_once(':') {
        Some((d, l)) if !d.is_empty() && !l.is_empty() => (PathBuf::from(d), l.to_string()),
        Some(_) => return Err(invalid(format!("invalid corpus `{arg}` (expected DIR:LABEL)"))),
        None => {
            let dir = PathBuf::from(arg);
            let label = dir_label(&dir, None)?;
            (dir, label)
        }
    };
    Ok(load_corpus(&dir, &label)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Ingest { root, label, stats_out, stoplist } => {
            let p = pipeline(PipelineConfig::default(), stoplist.as_deref())?;
            let corpus = load_corpus(root.join(&label), &label)?;
            let stats = corpus_stats(&p.prepare(&corpus));
            write_file(&stats_out, &to_json(&stats)?)
        }
        Command::Topics { corpus, label, model, top, out, table, k_range } => {
            let label = dir_label(&corpus, label.as_deref())?;
            let p = pipeline(model.config(top), model.stoplist.as_deref())?;
            let prepared = p.prepare(&load_corpus(&corpus, &label)?);
            let section = p.fit_topics(&prepared)?;
            let mut value = serde_json::to_value(&section).map_err(Error::from)?;
            if let Some(TopicCounts(ks)) = k_range {
                let sweep: Vec<_> = p
                    .coherence_sweep(&prepared, ks)?
                    .into_iter()
                    .map(|(k, c)| serde_json::json!({ "k": k, "mean_coherence": c }))
                    .collect();
                value["coherence_by_k"] = serde_json::Value::Array(sweep);
            }
            write_file(&out, &to_json(&value)?)?;
            if table.is_some() {
                print!("{}", topic_table(&section));
            }
            Ok(())
        }
        Command::Emotions { corpus, label, lexicon, pos, pooling, out, stoplist } => {
            let label = dir_label(&corpus, label.as_deref())?;
            let config = PipelineConfig { pooling, ..Default::default() };
            let p = pipeline(config, stoplist.as_deref())?.with_lexicon(load_lexicon(&lexicon, pos)?);
            let prepared = p.prepare(&load_corpus(&corpus, &label)?);
            let section = p.emotions(&prepared)?.expect("lexicon configured");
            write_file(&out, &to_json(&section)?)
        }
        Command::Report { corpora, baseline, lexicon, pos, pooling, model, top, out_dir, format } => {
            let mut inputs = corpora
                .iter()
                .map(|c| parse_corpus_arg(c).map(ReportInput::new))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(b) = baseline {
                inputs.push(ReportInput::baseline(parse_corpus_arg(&b)?));
            }
            let config = PipelineConfig { pooling, ..model.config(top) };
            let mut p = pipeline(config, model.stoplist.as_deref())?;
            if let Some(path) = lexicon {
                p = p.with_lexicon(load_lexicon(&path, pos)?);
            }
            let report = build_report(&inputs, &p)?;
            for path in render(&report, &format.0, &out_dir)? {
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("corpus-lens: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
