//! The `dda` command line.
//!
//! Exit codes: 0 success, 1 validation or domain failure, 2 usage, I/O or
//! parse failure. Data goes to stdout; notices and failures to stderr,
//! except `validate`, whose diagnostics are its data.

use std::fmt::Write as _;
use std::io::Write;
use std::net::IpAddr;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use dda_core::analytics::CorpusReport;
use dda_core::io::corpus::SchemaCause;
use dda_core::io::{
    export_reply_graph, import_reply_graph, import_transcript, parse_corpus, parse_irc_transcript,
    parse_reply_lines, serialize_corpus, validate_document, write_reply_lines, Corpus, FormatError,
    ReplyGraphRecord,
};
use dda_core::{extract_threads, Dialogue, Severity, TaxonomyDump, TaxonomyError, Thread};
use dda_service::{ServeConfig, DEFAULT_PORT};

#[derive(Debug, Parser)]
#[command(name = "dda", version, about = "Dependency dialogue act corpus tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a corpus file and list its diagnostics.
    Validate {
        path: PathBuf,
        /// Fail on warnings too.
        #[arg(long)]
        strict: bool,
    },
    /// List the threads of each dialogue.
    Threads {
        path: PathBuf,
        #[arg(long)]
        dialogue: Option<String>,
        #[arg(long, value_enum, default_value_t = ThreadFormat::Tsv)]
        format: ThreadFormat,
    },
    /// Convert between corpus JSON, IRC reply graphs and plain transcripts.
    Convert {
        #[arg(long, value_enum)]
        from: InputFormat,
        #[arg(long, value_enum)]
        to: OutputFormat,
        input: PathBuf,
        output: PathBuf,
        /// IRC log read with `--from irc`, written with `--to irc`.
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Dialogue to export, or id for an imported dialogue.
        #[arg(long)]
        dialogue: Option<String>,
    },
    /// Print the analytics report.
    Stats { path: PathBuf },
    /// Serve the annotation API.
    Serve {
        #[arg(default_value = "corpus.json")]
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Directory of static UI assets served at `/`.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
    },
    /// Print the tag vocabularies.
    Taxonomy {
        #[arg(long, value_enum, default_value_t = TaxonomyFormat::Json)]
        format: TaxonomyFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThreadFormat {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Dda,
    Irc,
    Transcript,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Dda,
    Irc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TaxonomyFormat {
    Json,
    Tsv,
}

/// A command failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

/// Everything a command prints on success.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stderr.write_all(out.stderr.as_bytes());
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "dda: {}", f.message);
            f.code
        }
    }
}

pub fn execute(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Validate { path, strict } => cmd_validate(&path, strict),
        Command::Threads { path, dialogue, format } => cmd_threads(&path, dialogue.as_deref(), format),
        Command::Convert {
            from,
            to,
            input,
            output,
            transcript,
            dialogue,
        } => cmd_convert(from, to, &input, &output, transcript.as_deref(), dialogue.as_deref()),
        Command::Stats { path } => cmd_stats(&path),
        Command::Serve {
            path,
            port,
            host,
            static_dir,
        } => cmd_serve(ServeConfig {
            corpus: path,
            host,
            port,
            static_dir,
        }),
        Command::Taxonomy { format } => Ok(Output {
            stdout: cmd_taxonomy(format),
            ..Output::default()
        }),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read(path)?).map_err(|_| Failure::usage(format!("{} is not UTF-8", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

/// Graph violations and unknown tags are validation failures; everything
/// else about the bytes is a parse failure.
fn format_failure(path: &Path, e: FormatError) -> Failure {
    let message = format!("{}: {e}", path.display());
    match e {
        FormatError::SchemaViolation {
            cause: SchemaCause::Graph(_) | SchemaCause::Taxonomy(TaxonomyError::UnknownTag(_)),
            ..
        } => Failure::domain(message),
        _ => Failure::usage(message),
    }
}

fn load(path: &Path) -> Result<Corpus, Failure> {
    parse_corpus(&read(path)?).map_err(|e| format_failure(path, e))
}

fn select<'a>(corpus: &'a Corpus, id: Option<&str>) -> Result<Vec<&'a Dialogue>, Failure> {
    match id {
        None => Ok(corpus.dialogues().iter().collect()),
        Some(id) => corpus
            .dialogue(id)
            .map(|d| vec![d])
            .ok_or_else(|| Failure::usage(format!("no dialogue `{id}`"))),
    }
}

/// One line per diagnostic: `SEVERITY CODE dialogue:unit message`, with
/// `-` for findings not tied to a unit.
pub fn cmd_validate(path: &Path, strict: bool) -> Result<Output, Failure> {
    let findings = validate_document(&read(path)?, true).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let mut out = Output::default();
    let mut failing = false;
    for f in &findings {
        let d = &f.diagnostic;
        let unit = d.unit.map(|u| u.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(out.stdout, "{} {} {}:{} {}", d.severity.name(), d.code, f.dialogue, unit, d.message);
        failing |= d.severity == Severity::Error || (strict && d.severity == Severity::Warning);
    }
    out.code = i32::from(failing);
    Ok(out)
}

fn thread_tsv(out: &mut String, threads: &[Thread]) {
    for t in threads {
        let ids: Vec<String> = t.unit_ids.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}\t{}", t.root, ids.join(","));
    }
}

/// TSV records are `root<TAB>id,id,..`. Without `--dialogue` each
/// dialogue's block is headed by `# <id>`.
pub fn cmd_threads(path: &Path, dialogue: Option<&str>, format: ThreadFormat) -> Result<Output, Failure> {
    let corpus = load(path)?;
    let chosen = select(&corpus, dialogue)?;
    let mut out = Output::default();
    match format {
        ThreadFormat::Tsv => {
            for d in chosen {
                if dialogue.is_none() {
                    let _ = writeln!(out.stdout, "# {}", d.id());
                }
                thread_tsv(&mut out.stdout, &extract_threads(d));
            }
        }
        ThreadFormat::Json => {
            let value = if dialogue.is_some() {
                serde_json::to_value(extract_threads(chosen[0]))
            } else {
                let blocks: Vec<serde_json::Value> = chosen
                    .iter()
                    .map(|d| serde_json::json!({"id": d.id(), "threads": extract_threads(d)}))
                    .collect();
                Ok(serde_json::json!({ "dialogues": blocks }))
            };
            out.stdout = serde_json::to_string_pretty(&value.expect("threads serialize")).expect("json");
            out.stdout.push('\n');
        }
    }
    Ok(out)
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dialogue".into())
}

pub fn cmd_convert(
    from: InputFormat,
    to: OutputFormat,
    input: &Path,
    output: &Path,
    transcript: Option<&Path>,
    dialogue: Option<&str>,
) -> Result<Output, Failure> {
    let corpus = match from {
        InputFormat::Dda => load(input)?,
        InputFormat::Irc => {
            let log = transcript.ok_or_else(|| Failure::usage("--from irc needs --transcript LOG"))?;
            let lines = parse_irc_transcript(&read_text(log)?);
            let pairs = parse_reply_lines(&read_text(input)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
            let record = ReplyGraphRecord {
                dialogue_id: dialogue.map(str::to_string).unwrap_or_else(|| stem(input)),
                pairs,
            };
            let d = import_reply_graph(&lines, &record)
                .map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
            Corpus::from_dialogues([d]).expect("one dialogue")
        }
        InputFormat::Transcript => {
            let id = dialogue.map(str::to_string).unwrap_or_else(|| stem(input));
            let d = import_transcript(&id, &read_text(input)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
            Corpus::from_dialogues([d]).expect("one dialogue")
        }
    };
    let mut out = Output::default();
    match to {
        OutputFormat::Dda => write(output, &serialize_corpus(&corpus))?,
        OutputFormat::Irc => {
            let d = match (from, dialogue) {
                (InputFormat::Dda, Some(_)) => select(&corpus, dialogue)?[0],
                _ => match corpus.dialogues() {
                    [d] => d,
                    _ => return Err(Failure::usage("--to irc exports one dialogue; pick it with --dialogue")),
                },
            };
            let record = export_reply_graph(d);
            let dropped_labels = d
                .edges()
                .filter(|e| !e.is_self())
                .flat_map(|e| e.labels)
                .filter(|l| l.tag_name().is_some())
                .count();
            let self_edges = d.edges().filter(|e| e.is_self()).count();
            if dropped_labels > 0 || self_edges > 0 {
                let _ = writeln!(
                    out.stderr,
                    "warning: reply graphs are unlabelled; dropped {dropped_labels} tag label(s) and {self_edges} self edge(s)"
                );
            }
            write(output, write_reply_lines(&record).as_bytes())?;
            if let Some(log) = transcript.filter(|_| from != InputFormat::Irc) {
                let text: String = d.units().iter().map(|u| format!("{}\t{}\n", u.speaker, u.text)).collect();
                write(log, text.as_bytes())?;
            }
        }
    }
    Ok(out)
}

pub fn cmd_stats(path: &Path) -> Result<Output, Failure> {
    let corpus = load(path)?;
    Ok(Output {
        stdout: CorpusReport::new(corpus.dialogues()).to_json(),
        ..Output::default()
    })
}

pub fn cmd_taxonomy(format: TaxonomyFormat) -> String {
    let dump = TaxonomyDump::new();
    match format {
        TaxonomyFormat::Json => dump.to_json(),
        TaxonomyFormat::Tsv => {
            let mut out = String::new();
            for a in &dump.dialog_acts {
                let _ = writeln!(out, "dialog_act\t{}\t{}", a.category, a.name);
            }
            for r in &dump.rhetorical {
                let _ = writeln!(out, "rhetorical\t{}\t{}\t{}", r.class, r.name, r.dual.unwrap_or("-"));
            }
            out
        }
    }
}

fn cmd_serve(config: ServeConfig) -> Result<Output, Failure> {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::usage(format!("cannot start runtime: {e}")))?;
    let shutdown = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    runtime
        .block_on(dda_service::serve(config, shutdown))
        .map_err(|e| Failure::usage(e.to_string()))?;
    Ok(Output::default())
}
