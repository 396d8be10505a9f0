//! `idri` command-line front end: compute, aggregate, check, synth.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 check failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::{
    ingest_edges_csv, ingest_metadata, read_metadata_csv, write_edges_csv, CitationGraph,
    IngestSummary, Metadata, PaperId, RefMode,
};
use crate::metric::{
    aggregate, compute_metric, render_decimal, render_percent, AggregateResult, AggregateStatus,
    IncludeRule, Rational,
};
use crate::motif::{all_focal_stats, focal_stats, FocalStats};
use crate::oracle::{enumerate_q, DEFAULT_CAP};
use crate::synth::{generate, SynthConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "idri",
    version,
    about = "Co-citation interdisciplinarity index for citation edge lists"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-paper metrics
    Compute(ComputeArgs),
    /// Joint metrics per group of papers
    Aggregate(AggregateArgs),
    /// Compare the fast X-motif count with brute-force enumeration
    Check(CheckArgs),
    /// Generate a preferential-attachment citation network
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum GroupBy {
    /// Group column of the metadata file
    #[default]
    Group,
    /// Every computed paper in one group named `all`
    All,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Decimal places for metric values (percentages always use one)
    #[arg(long = "round", default_value_t = 4)]
    pub places: usize,
    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long)]
    pub metadata: Option<PathBuf>,
    #[arg(long, default_value_t = RefMode::Dataset)]
    pub mode: RefMode,
    /// Also emit papers nobody cites
    #[arg(long)]
    pub include_uncited: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AggregateArgs {
    #[arg(long)]
    pub edges: PathBuf,
    /// Required with `--group-by group`
    #[arg(long)]
    pub metadata: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GroupBy::Group)]
    pub group_by: GroupBy,
    /// s_ge_1 or s_ge_2
    #[arg(long = "include", default_value = "s_ge_1")]
    pub include: IncludeRule,
    #[arg(long, default_value_t = RefMode::Dataset)]
    pub mode: RefMode,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub edges: PathBuf,
    /// Check only this paper; otherwise every cited paper
    #[arg(long)]
    pub focal: Option<String>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub papers: usize,
    #[arg(long)]
    pub refs: usize,
    #[arg(long, default_value_t = 0.1)]
    pub mix: f64,
    /// Random seed; derived from the clock when absent
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(Error),
    Check(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Compute(args) => cmd_compute(&args, stdout, stderr),
        Command::Aggregate(args) => cmd_aggregate(&args, stdout, stderr),
        Command::Check(args) => cmd_check(&args, stdout, stderr),
        Command::Synth(args) => cmd_synth(&args, stdout, stderr),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DATA
        }
        Err(Failure::Check(mismatches)) => {
            let _ = writeln!(stderr, "check failed: {mismatches} mismatch(es)");
            EXIT_CHECK_FAILED
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

pub fn load_graph(path: &Path) -> Result<(CitationGraph, IngestSummary)> {
    ingest_edges_csv(open(path)?)
}

pub fn load_metadata(graph: &mut CitationGraph, path: &Path) -> Result<Metadata> {
    let records = read_metadata_csv(open(path)?)?;
    ingest_metadata(graph, records)
}

fn report_ingest(summary: &IngestSummary, stderr: &mut dyn Write) {
    if let Ok(json) = serde_json::to_string(summary) {
        let _ = writeln!(stderr, "{json}");
    }
}

fn load_inputs(
    edges: &Path,
    metadata: Option<&Path>,
    stderr: &mut dyn Write,
) -> Result<(CitationGraph, Option<Metadata>)> {
    let (mut graph, summary) = load_graph(edges)?;
    report_ingest(&summary, stderr);
    let meta = match metadata {
        Some(path) => {
            let meta = load_metadata(&mut graph, path)?;
            for w in &meta.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            Some(meta)
        }
        None => None,
    };
    Ok((graph, meta))
}

fn emit(out: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Error::io(path, e)),
        None => stdout
            .write_all(bytes)
            .and_then(|()| stdout.flush())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

/// One per-paper output row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComputeRow {
    pub paper_id: String,
    pub s: u64,
    #[serde(rename = "D")]
    pub d: u64,
    pub k: u64,
    pub q: u64,
    pub xm: Option<String>,
    pub xm_norm: Option<String>,
    pub idri: Option<String>,
    pub idri_percent: Option<String>,
    pub status: String,
}

const COMPUTE_DECIMALS: [&str; 3] = ["xm", "xm_norm", "idri"];

impl ComputeRow {
    pub fn new(stats: &FocalStats, places: usize) -> Self {
        let m = compute_metric(stats);
        let fmt = |v: &Option<Rational>| v.as_ref().map(|r| render_decimal(r, places));
        ComputeRow {
            paper_id: stats.focal.to_string(),
            s: stats.s,
            d: stats.d,
            k: stats.k,
            q: stats.q,
            xm: fmt(&m.xm),
            xm_norm: fmt(&m.xm_norm),
            idri: fmt(&m.idri),
            idri_percent: m.idri.as_ref().map(render_percent),
            status: m.status.to_string(),
        }
    }
}

/// One per-group output row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AggregateRow {
    pub group: String,
    pub n: u64,
    pub sum_s: u64,
    #[serde(rename = "sum_D")]
    pub sum_d: u64,
    pub sum_q: u64,
    pub sum_k: u64,
    pub xm_joint: Option<String>,
    pub xm_norm_joint: Option<String>,
    pub idri_joint: Option<String>,
    pub idri_percent: Option<String>,
    pub status: String,
}

const AGGREGATE_DECIMALS: [&str; 3] = ["xm_joint", "xm_norm_joint", "idri_joint"];

impl AggregateRow {
    pub fn new(agg: &AggregateResult, places: usize) -> Self {
        let fmt = |v: &Option<Rational>| v.as_ref().map(|r| render_decimal(r, places));
        AggregateRow {
            group: agg.group.clone(),
            n: agg.n,
            sum_s: agg.sum_s,
            sum_d: agg.sum_d,
            sum_q: agg.sum_q,
            sum_k: agg.sum_k,
            xm_joint: fmt(&agg.xm_joint),
            xm_norm_joint: fmt(&agg.xm_norm_joint),
            idri_joint: fmt(&agg.idri_joint),
            idri_percent: agg.idri_joint.as_ref().map(render_percent),
            status: agg.status.to_string(),
        }
    }

    fn empty(group: &str) -> Self {
        AggregateRow {
            group: group.to_owned(),
            n: 0,
            sum_s: 0,
            sum_d: 0,
            sum_q: 0,
            sum_k: 0,
            xm_joint: None,
            xm_norm_joint: None,
            idri_joint: None,
            idri_percent: None,
            status: AggregateStatus::InsufficientGroup.to_string(),
        }
    }
}

/// Renders rows as CSV (header plus one line per row) or line-delimited
/// JSON. In JSON the rendered decimals become numbers.
pub fn render_rows<R: Serialize>(rows: &[R], format: Format, decimals: &[&str]) -> Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in rows {
                writer.serialize(row)?;
            }
            writer
                .into_inner()
                .map_err(|e| Error::io("<csv buffer>", e.into_error()))
        }
        Format::Json => {
            let mut out = Vec::new();
            for row in rows {
                let mut value = serde_json::to_value(row).expect("rows serialize to JSON");
                if let Value::Object(map) = &mut value {
                    numberize(map, decimals);
                }
                serde_json::to_writer(&mut out, &value).expect("JSON to memory");
                out.push(b'\n');
            }
            Ok(out)
        }
    }
}

fn numberize(map: &mut Map<String, Value>, keys: &[&str]) {
    for key in keys {
        if let Some(slot) = map.get_mut(*key) {
            let parsed = slot
                .as_str()
                .and_then(|s| s.parse::<f64>().ok())
                .and_then(serde_json::Number::from_f64);
            if let Some(n) = parsed {
                *slot = Value::Number(n);
            }
        }
    }
}

/// Per-paper rows in id order. Uncited papers are skipped unless asked for.
pub fn compute_rows(
    graph: &CitationGraph,
    mode: RefMode,
    include_uncited: bool,
    places: usize,
) -> Result<Vec<ComputeRow>> {
    let stats = all_focal_stats(graph, mode)?;
    Ok(stats
        .iter()
        .filter(|st| include_uncited || st.s > 0)
        .map(|st| ComputeRow::new(st, places))
        .collect())
}

fn cmd_compute(
    args: &ComputeArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let (graph, _) = load_inputs(&args.edges, args.metadata.as_deref(), stderr)?;
    let rows = compute_rows(&graph, args.mode, args.include_uncited, args.output.places)?;
    let bytes = render_rows(&rows, args.output.format, &COMPUTE_DECIMALS)?;
    emit(args.output.out.as_deref(), &bytes, stdout)?;
    Ok(())
}

/// Groups papers and aggregates each group. Groups without any admissible
/// member still get a row, with status `insufficient_group`.
pub fn aggregate_rows(
    graph: &CitationGraph,
    groups: &[(String, Vec<PaperId>)],
    mode: RefMode,
    rule: IncludeRule,
    places: usize,
) -> Result<Vec<AggregateRow>> {
    let mut rows = Vec::with_capacity(groups.len());
    for (label, members) in groups {
        let stats = members
            .iter()
            .map(|p| focal_stats(graph, p.as_str(), mode))
            .collect::<Result<Vec<_>>>()?;
        match aggregate(label, &stats, rule) {
            Ok(agg) => rows.push(AggregateRow::new(&agg, places)),
            Err(Error::NoAggregableMembers) => rows.push(AggregateRow::empty(label)),
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

fn cmd_aggregate(
    args: &AggregateArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    if args.group_by == GroupBy::Group && args.metadata.is_none() {
        return Err(Failure::Usage(
            "--metadata is required with --group-by group".into(),
        ));
    }
    let (graph, meta) = load_inputs(&args.edges, args.metadata.as_deref(), stderr)?;
    let groups: Vec<(String, Vec<PaperId>)> = match args.group_by {
        GroupBy::All => vec![("all".to_owned(), graph.ids().to_vec())],
        GroupBy::Group => {
            let meta = meta.expect("metadata checked above");
            meta.grouping
                .groups()
                .into_iter()
                .map(|(label, members)| (label.to_owned(), members.into_iter().cloned().collect()))
                .collect()
        }
    };
    let rows = aggregate_rows(&graph, &groups, args.mode, args.include, args.output.places)?;
    let bytes = render_rows(&rows, args.output.format, &AGGREGATE_DECIMALS)?;
    emit(args.output.out.as_deref(), &bytes, stdout)?;
    Ok(())
}

/// Result of comparing the fast path with the enumeration oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub lines: Vec<String>,
    pub mismatches: usize,
}

/// Compares `fast` against [`enumerate_q`] for one focal paper or for every
/// cited paper. `fast` is a parameter so the harness itself can be tested
/// against a faulty engine.
pub fn check_report<F>(
    graph: &CitationGraph,
    focal: Option<&str>,
    cap: usize,
    fast: F,
) -> Result<CheckReport>
where
    F: Fn(&CitationGraph, &str) -> Result<u64>,
{
    if graph.len() > cap {
        return Err(Error::EnumerationCap {
            papers: graph.len(),
            cap,
        });
    }
    let focals: Vec<&str> = match focal {
        Some(id) => {
            graph
                .index_of(id)
                .ok_or_else(|| Error::UnknownPaper(id.to_owned()))?;
            vec![id]
        }
        None => (0..graph.len())
            .filter(|&ix| !graph.citers_of(ix).is_empty())
            .map(|ix| graph.id(ix).as_str())
            .collect(),
    };
    let mut report = CheckReport {
        lines: Vec::with_capacity(focals.len()),
        mismatches: 0,
    };
    for id in focals {
        let fast_q = fast(graph, id)?;
        let oracle_q = enumerate_q(graph, id, cap)?;
        let verdict = if fast_q == oracle_q {
            "PASS"
        } else {
            report.mismatches += 1;
            "FAIL"
        };
        report
            .lines
            .push(format!("{id}: fast={fast_q} oracle={oracle_q} {verdict}"));
    }
    Ok(report)
}

pub fn fast_q(graph: &CitationGraph, focal: &str) -> Result<u64> {
    focal_stats(graph, focal, RefMode::Dataset).map(|st| st.q)
}

fn cmd_check(
    args: &CheckArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let (graph, _) = load_inputs(&args.edges, None, stderr)?;
    let report = check_report(&graph, args.focal.as_deref(), args.cap, fast_q)?;
    let mut text = report.lines.join("\n");
    text.push('\n');
    emit(None, text.as_bytes(), stdout)?;
    if report.mismatches > 0 {
        return Err(Failure::Check(report.mismatches));
    }
    Ok(())
}

fn clock_seed() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map_or(0, |d| d.as_nanos() as u64)
}

fn cmd_synth(
    args: &SynthArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let config = SynthConfig {
        num_papers: args.papers,
        refs_per_paper: args.refs,
        uniform_mix: args.mix,
        seed: args.seed.unwrap_or_else(clock_seed),
    };
    config
        .validate()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let graph = generate(&config)?;
    let mut bytes = Vec::new();
    write_edges_csv(&graph, &mut bytes)?;
    emit(args.out.as_deref(), &bytes, stdout)?;
    let _ = writeln!(stderr, "seed: {}", config.seed);
    Ok(())
}
