//! Batch command-line front end. `run` takes the argument vector and two
//! writers so the binary and the tests drive the exact same code.
//!
//! Exit codes: 0 success, 1 operational error (bad flags, I/O, overflow),
//! 2 a checked conjecture has counterexamples.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    self, check_conjecture_3_1, check_conjecture_3_2, check_conjecture_5_1, check_conjecture_6_1,
    classification_matrix, filter_false_negatives, ClassificationReport, ConjectureId,
    ConjectureResult, SweepReport,
};
use crate::engine::{fixed_points, generate, SequenceRun, SequenceSpec, Variant};
use crate::oeis;
use crate::store::{self, Cache, CachedRuns};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FALSIFIED: i32 = 2;

/// Default cache directory for `sweep` and `export` when `--cache` is absent.
pub const CACHE_ENV: &str = "FIXPRIME_CACHE_DIR";

/// The family of primes tabulated for success and false-negative rates.
pub const PAPER_FAMILY: [u64; 7] = [3, 5, 7, 11, 41, 97, 199];

#[derive(Debug, Parser)]
#[command(name = "fixprime", version, about = "Fixed points of smallest-unused-divisor sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a sequence and print its terms.
    Generate(GenerateArgs),
    /// Classify fixed points against primality.
    Analyze(AnalyzeArgs),
    /// Classify A(p) for several p and print the summary tables.
    Sweep(SweepArgs),
    /// Check one of the conjectures over a range.
    Conjecture(ConjectureArgs),
    /// Compare a generated sequence with an OEIS b-file.
    OeisCheck(OeisCheckArgs),
    /// Export a table from the sweep report stored in a cache directory.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Standard,
    NoZero,
    Shifted,
}

#[derive(Debug, Clone, Args)]
pub struct SequenceArgs {
    /// Multiplier p of the triangular numbers (implies --variant standard).
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Number of terms N.
    #[arg(long, default_value_t = 10_000)]
    pub terms: usize,
}

impl SequenceArgs {
    fn variant(&self) -> Result<Variant> {
        match (self.variant, self.p) {
            (None | Some(VariantArg::Standard), Some(p)) => Ok(Variant::Standard(p)),
            (Some(VariantArg::Standard), None) => bail!("--variant standard requires --p"),
            (None, None) => bail!("one of --p or --variant is required"),
            (Some(VariantArg::NoZero), None) => Ok(Variant::TriangularNoZero),
            (Some(VariantArg::Shifted), None) => Ok(Variant::TriangularShifted),
            (Some(_), Some(_)) => bail!("--p only applies to --variant standard"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateFormat {
    Table,
    Csv,
    Json,
    Bfile,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    #[arg(long, value_enum, default_value_t = GenerateFormat::Table)]
    pub format: GenerateFormat,
    /// Write data here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub seq: SequenceArgs,
    /// List the primes that appear one position late.
    #[arg(long)]
    pub near_matches: bool,
    /// Drop false negatives divisible by these primes, e.g. 3,5.
    #[arg(long, value_delimiter = ',')]
    pub filter_small_primes: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub p_list: Vec<u64>,
    #[arg(long, default_value_t = 10_000)]
    pub terms: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Cache directory (defaults to $FIXPRIME_CACHE_DIR when set).
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long, value_parser = parse_conjecture_id)]
    pub id: ConjectureId,
    #[arg(long, default_value_t = 10_000)]
    pub terms: usize,
    /// Values of p for 3.1, 3.2 and 6.1 (default: 3,5,7,11,41,97,199; 541 for 6.1).
    #[arg(long, value_delimiter = ',')]
    pub p_list: Option<Vec<u64>>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

fn parse_conjecture_id(s: &str) -> Result<ConjectureId, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompareWhat {
    /// a(n)
    Terms,
    /// q(n)
    Q,
    /// ascending fixed points
    FixedPoints,
}

#[derive(Debug, Args)]
pub struct OeisCheckArgs {
    #[arg(long)]
    pub bfile: PathBuf,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Run index n is compared with b-file index n - shift.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub shift: i64,
    /// Terms to generate (default: enough to cover the b-file).
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long, value_enum, default_value_t = CompareWhat::Terms)]
    pub what: CompareWhat,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    Table2,
    Table3,
    Figure2,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub what: ExportWhat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", error_chain(&e));
            EXIT_ERROR
        }
    }
}

/// Joins the context chain, skipping causes the previous message already
/// embeds.
fn error_chain(e: &anyhow::Error) -> String {
    let mut line = String::new();
    let mut last = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !last.contains(&msg) {
            if !line.is_empty() {
                line.push_str(": ");
            }
            line.push_str(&msg);
        }
        last = msg;
    }
    line
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Generate(args) => cmd_generate(args, out),
        Command::Analyze(args) => cmd_analyze(args, out),
        Command::Sweep(args) => cmd_sweep(args, out),
        Command::Conjecture(args) => cmd_conjecture(args, out),
        Command::OeisCheck(args) => cmd_oeis_check(args, out),
        Command::Export(args) => cmd_export(args, out),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, data: &str) -> Result<()> {
    match path {
        Some(p) => store::write_atomic(p, data.as_bytes())
            .with_context(|| format!("writing {}", p.display()))?,
        None => out.write_all(data.as_bytes())?,
    }
    Ok(())
}

/// Fixed-width table: marker, n, last summand, q(n), a(n).
pub fn format_table(run: &SequenceRun) -> String {
    let variant = run.spec().variant;
    let mut s = format!(
        "{:<12} {:>6} {:>12} {:>14} {:>8}\n",
        "", "n", "multiple", "q(n)", "a(n)"
    );
    for t in run.terms() {
        let marker = if t.is_fixed_point { "fixed point" } else { "" };
        s.push_str(&format!(
            "{:<12} {:>6} {:>12} {:>14} {:>8}\n",
            marker,
            t.n,
            variant.last_summand(t.n),
            t.q,
            t.a
        ));
    }
    s
}

pub fn format_csv(run: &SequenceRun) -> Result<String> {
    let variant = run.spec().variant;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "multiple", "q", "a", "fixed_point", "near_match", "bootstrap_duplicate"])?;
    for t in run.terms() {
        w.write_record([
            t.n.to_string(),
            variant.last_summand(t.n).to_string(),
            t.q.to_string(),
            t.a.to_string(),
            t.is_fixed_point.to_string(),
            t.is_near_match.to_string(),
            t.is_bootstrap_duplicate.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(serde::Serialize)]
struct RunJson<'a> {
    spec: &'a SequenceSpec,
    terms: &'a [crate::engine::TermRecord],
    fixed_points: Vec<u64>,
}

fn cmd_generate(args: GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = SequenceSpec::new(args.seq.variant()?, args.seq.terms);
    let run = generate(spec)?;
    let data = match args.format {
        GenerateFormat::Table => format_table(&run),
        GenerateFormat::Csv => format_csv(&run)?,
        GenerateFormat::Bfile => oeis::write_bfile(&run, None)?,
        GenerateFormat::Json => store::report_json(&RunJson {
            spec: run.spec(),
            terms: run.terms(),
            fixed_points: fixed_points(&run),
        })?,
    };
    emit(out, args.out.as_deref(), &data)?;
    Ok(EXIT_OK)
}

fn list(values: &[u64]) -> String {
    format!("{values:?}")
}

pub fn format_report(report: &ClassificationReport, with_near: bool) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| s.push_str(&format!("{k}={v}\n"));
    kv("sequence", report.spec.variant.to_string());
    kv("terms", report.n.to_string());
    kv("excluded_primes", list(&report.excluded_primes));
    kv("detected", report.detected.to_string());
    kv("near_matches", report.near_matches.to_string());
    kv("total_eligible_primes", report.total_eligible_primes.to_string());
    kv("success_rate", report.success_rate.to_string());
    kv("false_negatives", report.false_negatives.to_string());
    kv("total_nonprimes", report.total_nonprimes.to_string());
    kv("false_negative_rate", report.false_negative_rate.to_string());
    kv("missed_primes", list(&report.missed_primes));
    if with_near {
        kv("near_match_primes", list(&report.near_match_primes));
    }
    s
}

#[derive(serde::Serialize)]
struct AnalyzeJson<'a> {
    report: &'a ClassificationReport,
    matrix: analysis::ClassificationMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    filtered: Option<analysis::FilteredFalseNegatives>,
}

fn cmd_analyze(args: AnalyzeArgs, out: &mut dyn Write) -> Result<i32> {
    let report = analysis::analyze(args.seq.variant()?, args.seq.terms)?;
    let matrix = classification_matrix(&report);
    let filtered = args
        .filter_small_primes
        .as_deref()
        .map(|small| filter_false_negatives(&report, small));
    let data = match args.format {
        ReportFormat::Json => store::report_json(&AnalyzeJson {
            report: &report,
            matrix,
            filtered,
        })?,
        ReportFormat::Text => {
            let mut s = format_report(&report, args.near_matches);
            if let Some(f) = &filtered {
                s.push_str(&format!("filter_small_primes={}\n", list(&f.small_primes)));
                s.push_str(&format!("filtered_removed={}\n", f.removed));
                s.push_str(&format!("filtered_remaining={}\n", f.remaining.len()));
                s.push_str(&format!("filtered_false_negative_rate={}\n", f.remaining_rate));
            }
            s.push('\n');
            s.push_str(&matrix.to_string());
            s.push('\n');
            s
        }
    };
    out.write_all(data.as_bytes())?;
    Ok(EXIT_OK)
}

fn cache_dir(arg: Option<PathBuf>) -> Option<PathBuf> {
    arg.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

fn run_sweep(p_list: &[u64], n: usize, jobs: usize, cache: Option<&Cache>) -> Result<SweepReport> {
    let report = match cache {
        Some(c) => analysis::sweep_with(p_list, n, jobs, &CachedRuns { cache: c })?,
        None => analysis::sweep_with(p_list, n, jobs, &analysis::Generate)?,
    };
    Ok(report)
}

pub fn format_sweep(report: &SweepReport) -> Result<String> {
    let mut s = String::new();
    s.push_str(&format!("# success rates, N={}\n", report.n));
    s.push_str(&store::export_table2(report)?);
    s.push_str(&format!("\n# false negatives, N={}\n", report.n));
    s.push_str(&store::export_table3(report)?);
    s.push_str("\n# success rate by p\n");
    s.push_str(&store::export_figure2(report)?);
    s.push_str(&format!("\nmissed_by_all={}\n", list(&report.union_missed)));
    for r in &report.reports {
        s.push_str(&format!("missed[p={}]={}\n", r.p().unwrap_or_default(), list(&r.missed_primes)));
    }
    Ok(s)
}

fn cmd_sweep(args: SweepArgs, out: &mut dyn Write) -> Result<i32> {
    if args.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    let cache = cache_dir(args.cache).map(Cache::new);
    let report = run_sweep(&args.p_list, args.terms, args.jobs, cache.as_ref())?;
    if let Some(c) = &cache {
        c.save_sweep(&report)?;
    }
    let data = match args.format {
        ReportFormat::Json => store::report_json(&report)?,
        ReportFormat::Text => format_sweep(&report)?,
    };
    out.write_all(data.as_bytes())?;
    Ok(EXIT_OK)
}

fn unit(id: ConjectureId) -> &'static str {
    match id {
        ConjectureId::C3_1 => "fixed points are odd",
        ConjectureId::C3_2 => "eligible primes found at a(n) or a(n+1)",
        ConjectureId::C5_1 => "odd primes detected",
        ConjectureId::C6_1 => "eligible primes detected",
    }
}

pub fn format_conjecture(r: &ConjectureResult) -> String {
    let specs: Vec<_> = r.specs.iter().map(|s| s.variant.to_string()).collect();
    let mut s = format!(
        "conjecture {} {}: {}/{} {} (N={}; {})\n",
        r.conjecture_id.label(),
        if r.holds { "holds" } else { "FAILS" },
        r.satisfied(),
        r.checked,
        unit(r.conjecture_id),
        r.n,
        specs.join(", ")
    );
    for c in &r.counterexamples {
        s.push_str(&format!("  counterexample {} n={}: {}\n", c.spec.variant, c.n, c.detail));
    }
    s
}

pub fn check_conjecture(
    id: ConjectureId,
    n: usize,
    p_list: Option<&[u64]>,
    jobs: usize,
) -> Result<Vec<ConjectureResult>> {
    let family = p_list.unwrap_or(&PAPER_FAMILY);
    Ok(match id {
        ConjectureId::C3_1 => family
            .iter()
            .map(|&p| generate(SequenceSpec::standard(p, n)).map(|run| check_conjecture_3_1(&run)))
            .collect::<Result<_, _>>()?,
        ConjectureId::C3_2 => family
            .iter()
            .map(|&p| -> Result<_> {
                let run = generate(SequenceSpec::standard(p, n + 1))?;
                Ok(check_conjecture_3_2(&run)?)
            })
            .collect::<Result<_>>()?,
        ConjectureId::C5_1 => vec![check_conjecture_5_1(n)?],
        ConjectureId::C6_1 => {
            let family = p_list.unwrap_or(&[541]);
            let sweep = run_sweep(family, n, jobs, None)?;
            vec![check_conjecture_6_1(&sweep)]
        }
    })
}

fn cmd_conjecture(args: ConjectureArgs, out: &mut dyn Write) -> Result<i32> {
    if args.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    if args.p_list.is_some() && args.id == ConjectureId::C5_1 {
        bail!("--p-list does not apply to conjecture 5.1");
    }
    let results = check_conjecture(args.id, args.terms, args.p_list.as_deref(), args.jobs)?;
    let data = match args.format {
        ReportFormat::Json => store::report_json(&results)?,
        ReportFormat::Text => results.iter().map(format_conjecture).collect(),
    };
    out.write_all(data.as_bytes())?;
    Ok(if results.iter().all(|r| r.holds) {
        EXIT_OK
    } else {
        EXIT_FALSIFIED
    })
}

fn cmd_oeis_check(args: OeisCheckArgs, out: &mut dyn Write) -> Result<i32> {
    let seq = SequenceArgs {
        p: args.p,
        variant: args.variant,
        terms: 0,
    };
    let variant = seq.variant()?;
    let text = fs::read_to_string(&args.bfile)
        .with_context(|| format!("reading {}", args.bfile.display()))?;
    let bfile = oeis::parse_bfile(&text)?;
    let last_index = bfile.entries.last().map(|e| e.0).unwrap_or(0);
    let default_terms = match args.what {
        CompareWhat::FixedPoints => 10_000,
        _ => usize::try_from(last_index + args.shift).unwrap_or(1).max(1),
    };
    let run = generate(SequenceSpec::new(variant, args.terms.unwrap_or(default_terms)))?;
    let result = match args.what {
        CompareWhat::Terms => oeis::compare(&run, &bfile, args.shift)?,
        CompareWhat::Q => oeis::compare_q(&run, &bfile, args.shift)?,
        CompareWhat::FixedPoints => oeis::compare_fixed_points(&run, &bfile, args.shift)?,
    };
    let data = match args.format {
        ReportFormat::Json => store::report_json(&result)?,
        ReportFormat::Text => {
            let id = bfile.sequence_id.as_deref().unwrap_or("b-file");
            match &result.first_mismatch {
                None => format!(
                    "match: {variant} agrees with {id} over {} positions (shift {})\n",
                    result.compared_length, result.applied_shift
                ),
                Some(m) => format!(
                    "mismatch: {variant} vs {id} at n={}: expected {}, got {} ({} positions compared, shift {})\n",
                    m.index, m.expected, m.actual, result.compared_length, result.applied_shift
                ),
            }
        }
    };
    out.write_all(data.as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_export(args: ExportArgs, out: &mut dyn Write) -> Result<i32> {
    let Some(dir) = cache_dir(args.cache) else {
        bail!("--cache is required (or set {CACHE_ENV})");
    };
    let cache = Cache::new(&dir);
    let Some(report) = cache.load_sweep()? else {
        bail!("no sweep report in {}; run `sweep --cache` first", dir.display());
    };
    let data = match args.what {
        ExportWhat::Table2 => store::export_table2(&report)?,
        ExportWhat::Table3 => store::export_table3(&report)?,
        ExportWhat::Figure2 => store::export_figure2(&report)?,
    };
    emit(out, args.out.as_deref(), &data)?;
    Ok(EXIT_OK)
}
