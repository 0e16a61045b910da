//! Command-line surface: single-case checks with traces, verdict tables with
//! golden comparison, witness construction with root verification, placement
//! enumeration, and oracle cross-validation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dines::{render_trace_json, render_trace_text, PivotPolicy, SignPolicy, Verdict};
use crate::exact::{format_rational, parse_rational_list, Rational};
use crate::gappoly::{scene_from_placement, DEFAULT_POLYA_MAX};
use crate::neumann::{
    enumerate_placements, u_polynomial, verify_roots, InstanceParameters, NeumannCase,
    RootPlacement, SubsetS,
};
use crate::oracle::{cross_validate, direct_feasibility, sample_instance, DirectResult, SampleConfig};
use crate::report::{build_table, compare_with_golden, parse_golden, run_symbolic};

/// Largest n accepted without --force; column counts grow multiplicatively
/// with every elimination level beyond it.
pub const DEFAULT_N_CAP: usize = 5;

pub const EXIT_FEASIBLE: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "neumann-roots",
    version,
    about = "Exact feasibility certificates for prescribed real-root placements",
    after_help = "Defaults: --seed 42, --samples 100, --polya-max 4, --pivot first.\n\
                  Exit codes: 0 feasible, 1 infeasible (or comparison failure), 2 indeterminate, 64 usage error."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide a case symbolically, uniformly over its ordering class
    Check(CheckArgs),
    /// Emit the full verdict table for every subset and placement of a given n
    Table(TableArgs),
    /// Construct an explicit positive witness and verify its root locations
    Witness(WitnessArgs),
    /// List all root placements for a given n
    Enumerate(EnumerateArgs),
    /// Cross-validate symbolic verdicts against instance elimination and direct solving
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PivotArg {
    /// First mixed row (the default)
    First,
    /// Mixed row minimizing the product P*Q
    Minpq,
}

impl From<PivotArg> for PivotPolicy {
    fn from(p: PivotArg) -> Self {
        match p {
            PivotArg::First => PivotPolicy::FirstMixed,
            PivotArg::Minpq => PivotPolicy::MinProduct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct CaseSelector {
    /// Case name, e.g. S13L02 (long form S1,3L0,2)
    #[arg(long)]
    case: Option<String>,
    /// Number of candidate roots (with --subset/--placement)
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated subset members, e.g. 1,3
    #[arg(long)]
    subset: Option<String>,
    /// Comma-separated interval indices, e.g. 0,0
    #[arg(long)]
    placement: Option<String>,
}

impl CaseSelector {
    fn resolve(&self) -> Result<NeumannCase, String> {
        match (&self.case, self.n, &self.subset, &self.placement) {
            (Some(name), None, None, None) => {
                NeumannCase::parse(name).map_err(|e| e.to_string())
            }
            (None, Some(n), Some(subset), Some(placement)) => {
                let members = parse_index_list(subset)?;
                let intervals = parse_index_list(placement)?;
                let subset = SubsetS::new(members, n).map_err(|e| e.to_string())?;
                let placement = RootPlacement::new(intervals, n).map_err(|e| e.to_string())?;
                Ok(NeumannCase::new(n, subset, placement))
            }
            _ => Err("give either --case NAME or all of --n, --subset, --placement".into()),
        }
    }
}

fn parse_index_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|tok| tok.trim().parse::<usize>().map_err(|_| format!("bad index {tok:?}")))
        .collect()
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    selector: CaseSelector,
    /// Polya multiplier cap for symbolic sign decisions
    #[arg(long, default_value_t = DEFAULT_POLYA_MAX)]
    polya_max: usize,
    #[arg(long, value_enum, default_value = "first")]
    pivot: PivotArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Shorthand for --format json
    #[arg(long)]
    json: bool,
    /// Print the full per-level trace
    #[arg(long)]
    trace: bool,
    /// Accept n beyond the default cap
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_POLYA_MAX)]
    polya_max: usize,
    #[arg(long, value_enum, default_value = "first")]
    pivot: PivotArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Compare against a golden CSV (case,verdict,step) and exit nonzero on
    /// verdict mismatch
    #[arg(long)]
    golden: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[command(flatten)]
    selector: CaseSelector,
    /// Comma-separated constants, e.g. 0,1,2
    #[arg(long)]
    a: Option<String>,
    /// Comma-separated candidate roots, e.g. 1/4,3/4
    #[arg(long)]
    lambda: Option<String>,
    /// Sampling seed when no instance is given
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_POLYA_MAX)]
    polya_max: usize,
    #[arg(long, value_enum, default_value = "first")]
    pivot: PivotArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Single case to cross-validate
    #[arg(long)]
    case: Option<String>,
    /// Sweep every case for the given n
    #[arg(long)]
    all: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_POLYA_MAX)]
    polya_max: usize,
    #[arg(long, value_enum, default_value = "first")]
    pivot: PivotArg,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long)]
    force: bool,
}

/// Defaults echoed into every JSON document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConfigEcho {
    pub seed: u64,
    pub samples: usize,
    pub polya_max: usize,
    pub pivot: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct CheckDoc {
    config: ConfigEcho,
    #[serde(flatten)]
    trace: crate::dines::TraceJson,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableCaseDoc {
    step: String,
    pf: bool,
    #[serde(flatten)]
    trace: crate::dines::TraceJson,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableDoc {
    config: ConfigEcho,
    n: usize,
    cases: Vec<TableCaseDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct WitnessDoc {
    config: ConfigEcho,
    case: String,
    verdict: String,
    a: Vec<String>,
    lambda: Vec<String>,
    qsq: Vec<String>,
    constraint_ok: bool,
    u_coefficients: Vec<String>,
    u_rendered: String,
    interval_counts: Vec<usize>,
    expected_counts: Vec<usize>,
    matches: bool,
}

pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(CliFailure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliFailure::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

enum CliFailure {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure::Io(e)
    }
}

fn check_cap(n: usize, force: bool) -> Result<(), CliFailure> {
    if n > DEFAULT_N_CAP && !force {
        return Err(CliFailure::Usage(format!(
            "n = {n} exceeds the default cap {DEFAULT_N_CAP}; columns multiply at every \
             elimination level, so this can be very slow - pass --force to proceed"
        )));
    }
    Ok(())
}

fn echo(seed: u64, samples: usize, polya_max: usize, pivot: PivotArg) -> ConfigEcho {
    ConfigEcho {
        seed,
        samples,
        polya_max,
        pivot: PivotPolicy::from(pivot).label().to_string(),
    }
}

fn run(cli: Cli) -> Result<i32, CliFailure> {
    match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Table(args) => cmd_table(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Oracle(args) => cmd_oracle(args),
    }
}

fn verdict_exit(verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::Feasible => EXIT_FEASIBLE,
        Verdict::Infeasible(_) => EXIT_INFEASIBLE,
        Verdict::Indeterminate(_) => EXIT_INDETERMINATE,
    }
}

fn cmd_check(args: CheckArgs) -> Result<i32, CliFailure> {
    let case = args.selector.resolve().map_err(CliFailure::Usage)?;
    check_cap(case.n, args.force)?;
    let sign_policy = SignPolicy {
        polya_max: args.polya_max,
    };
    let run = run_symbolic(&case, &sign_policy, args.pivot.into());
    let format = if args.json { FormatArg::Json } else { args.format };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        FormatArg::Json => {
            let doc = CheckDoc {
                config: echo(42, 100, args.polya_max, args.pivot),
                trace: render_trace_json(Some(&case.name()), "symbolic", &run.verdict, &run.trace),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
        }
        _ => {
            if args.trace {
                write!(
                    out,
                    "{}",
                    render_trace_text(Some(&case.name()), "symbolic", &run.verdict, &run.trace)
                )?;
            } else {
                match &run.verdict {
                    Verdict::Feasible => writeln!(out, "{}: feasible", case.name())?,
                    Verdict::Infeasible(info) => writeln!(
                        out,
                        "{}: infeasible at level {} (step {}), row {}",
                        case.name(),
                        info.level,
                        info.level + 1,
                        info.row + 1
                    )?,
                    Verdict::Indeterminate(info) => writeln!(
                        out,
                        "{}: indeterminate at level {}, row {}, column {}: {}",
                        case.name(),
                        info.level,
                        info.row + 1,
                        info.col + 1,
                        info.expression
                    )?,
                }
            }
        }
    }
    Ok(verdict_exit(&run.verdict))
}

fn cmd_table(args: TableArgs) -> Result<i32, CliFailure> {
    check_cap(args.n, args.force)?;
    let sign_policy = SignPolicy {
        polya_max: args.polya_max,
    };
    let output = build_table(args.n, &sign_policy, args.pivot.into());
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.format {
        FormatArg::Csv => {
            writeln!(out, "case,verdict,fail_level,pf,duration_ms")?;
            for row in &output.rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.case, row.verdict, row.step, row.pf, row.duration_ms
                )?;
            }
        }
        FormatArg::Json => {
            let cases = output
                .runs
                .iter()
                .zip(&output.rows)
                .map(|(run, row)| TableCaseDoc {
                    step: row.step.clone(),
                    pf: row.pf,
                    trace: render_trace_json(
                        Some(&row.case),
                        "symbolic",
                        &run.verdict,
                        &run.trace,
                    ),
                })
                .collect();
            let doc = TableDoc {
                config: echo(42, 100, args.polya_max, args.pivot),
                n: args.n,
                cases,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
        }
        FormatArg::Text => {
            writeln!(out, "{:<12} {:>7} {:>6}", "case", "verdict", "step")?;
            for row in &output.rows {
                writeln!(
                    out,
                    "{:<12} {:>7} {:>6}",
                    row.case,
                    row.verdict,
                    row.step_with_pf()
                )?;
            }
            let feasible = output.rows.iter().filter(|r| r.verdict == "1").count();
            writeln!(out, "{} cases, {} feasible", output.rows.len(), feasible)?;
        }
    }
    if let Some(path) = &args.golden {
        let text = std::fs::read_to_string(path)?;
        let golden = parse_golden(&text)
            .map_err(|e| CliFailure::Usage(format!("golden file {}: {e}", path.display())))?;
        let diff = compare_with_golden(&output.rows, &golden);
        for note in &diff.step_notes {
            eprintln!("note: {note}");
        }
        for miss in &diff.missing_cases {
            eprintln!("mismatch: case {miss} missing from computed table");
        }
        for extra in &diff.extra_cases {
            eprintln!("note: computed case {extra} absent from golden file");
        }
        if !diff.verdicts_match() {
            for m in &diff.verdict_mismatches {
                eprintln!("mismatch: {m}");
            }
            eprintln!("golden comparison FAILED");
            return Ok(1);
        }
        eprintln!("golden comparison passed ({} cases)", golden.len());
    }
    let indeterminate = output.rows.iter().any(|r| r.verdict == "?");
    Ok(if indeterminate { EXIT_INDETERMINATE } else { 0 })
}

fn cmd_witness(args: WitnessArgs) -> Result<i32, CliFailure> {
    let case = args.selector.resolve().map_err(CliFailure::Usage)?;
    check_cap(case.n, args.force)?;
    let sign_policy = SignPolicy {
        polya_max: args.polya_max,
    };
    let config = ConfigEcho {
        seed: args.seed,
        samples: 100,
        polya_max: args.polya_max,
        pivot: PivotPolicy::from(args.pivot).label().to_string(),
    };

    let inst = match (&args.a, &args.lambda) {
        (Some(a), Some(lambda)) => InstanceParameters {
            a: parse_rational_list(a).map_err(|e| CliFailure::Usage(e.to_string()))?,
            lambda: parse_rational_list(lambda).map_err(|e| CliFailure::Usage(e.to_string()))?,
        },
        (None, None) => {
            let sample_config = SampleConfig {
                seed: args.seed,
                ..SampleConfig::default()
            };
            sample_instance(&case, &sample_config, 0)
        }
        _ => {
            return Err(CliFailure::Usage(
                "give both --a and --lambda, or neither (seeded sampling)".into(),
            ))
        }
    };
    if let Err(e) = inst.check_placement(&case.placement) {
        return Err(CliFailure::Usage(format!(
            "instance does not realize {}: {e}",
            case.name()
        )));
    }

    let qsq = match direct_feasibility(&case, &inst) {
        DirectResult::Feasible(solution) => solution,
        DirectResult::Infeasible => {
            // Explain with the class-wide refutation when there is one.
            let symbolic = run_symbolic(&case, &sign_policy, args.pivot.into());
            match &symbolic.verdict {
                Verdict::Infeasible(info) => eprintln!(
                    "{} is infeasible for the whole ordering class (refuted at level {}, step {})",
                    case.name(),
                    info.level,
                    info.level + 1
                ),
                _ => eprintln!(
                    "{}: this instance admits no strictly positive solution",
                    case.name()
                ),
            }
            return Ok(EXIT_INFEASIBLE);
        }
        DirectResult::Singular(report) => {
            eprintln!(
                "{}: instance system is singular ({report}); pick another instance or seed",
                case.name()
            );
            return Ok(EXIT_INFEASIBLE);
        }
    };

    let u = u_polynomial(&qsq, &case.subset, &inst.a).expect("oracle witness satisfies constraint");
    let check = verify_roots(&u, &inst.a, &case.placement)
        .map_err(|e| CliFailure::Usage(format!("root verification failed: {e}")))?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.format {
        FormatArg::Json => {
            let doc = WitnessDoc {
                config,
                case: case.name(),
                verdict: "feasible".into(),
                a: inst.a.iter().map(format_rational).collect(),
                lambda: inst.lambda.iter().map(format_rational).collect(),
                qsq: qsq.iter().map(format_rational).collect(),
                constraint_ok: true,
                u_coefficients: u.coeffs().iter().map(format_rational).collect(),
                u_rendered: u.to_string(),
                interval_counts: check.counts.clone(),
                expected_counts: check.expected.clone(),
                matches: check.matches,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
        }
        _ => {
            writeln!(out, "case {} (feasible instance)", case.name())?;
            writeln!(out, "a      = {}", join_rationals(&inst.a))?;
            writeln!(out, "lambda = {}", join_rationals(&inst.lambda))?;
            writeln!(out, "q^2    = {}", join_rationals(&qsq))?;
            if qsq.iter().any(num_traits::Zero::is_zero) {
                writeln!(out, "note: zero squared coordinate (degenerate witness)")?;
            }
            writeln!(out, "constraint sum eps*q^2 = 1: ok")?;
            writeln!(out, "U(x) = {u}")?;
            let labels = interval_labels(case.n);
            let rendered: Vec<String> = labels
                .iter()
                .zip(&check.counts)
                .map(|(l, c)| format!("{l}={c}"))
                .collect();
            writeln!(out, "root counts: {}", rendered.join(" "))?;
            writeln!(
                out,
                "placement match: {}",
                if check.matches { "yes" } else { "NO" }
            )?;
        }
    }
    Ok(if check.matches { 0 } else { 1 })
}

fn join_rationals(values: &[Rational]) -> String {
    values
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(", ")
}

fn interval_labels(n: usize) -> Vec<String> {
    let mut labels = Vec::with_capacity(n + 2);
    labels.push("(-inf,a1)".to_string());
    for t in 1..=n {
        labels.push(format!("(a{},a{})", t, t + 1));
    }
    labels.push(format!("(a{},+inf)", n + 1));
    labels
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<i32, CliFailure> {
    check_cap(args.n, args.force)?;
    let placements = enumerate_placements(args.n);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match args.format {
        FormatArg::Json => {
            let docs: Vec<serde_json::Value> = placements
                .iter()
                .map(|p| {
                    let digits: String = p.intervals().iter().map(ToString::to_string).collect();
                    let scene = scene_from_placement(args.n, p);
                    serde_json::json!({
                        "digits": digits,
                        "intervals": p.intervals(),
                        "order": scene.order_string(),
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&docs).unwrap())?;
        }
        _ => {
            for p in &placements {
                let digits: String = p.intervals().iter().map(ToString::to_string).collect();
                let scene = scene_from_placement(args.n, p);
                writeln!(out, "L{digits}: {}", scene.order_string())?;
            }
        }
    }
    Ok(0)
}

fn cmd_oracle(args: OracleArgs) -> Result<i32, CliFailure> {
    let cases: Vec<NeumannCase> = if args.all {
        let n = args
            .n
            .ok_or_else(|| CliFailure::Usage("--all requires --n".into()))?;
        check_cap(n, args.force)?;
        crate::neumann::enumerate_cases(n)
    } else {
        let name = args
            .case
            .as_deref()
            .ok_or_else(|| CliFailure::Usage("give --case NAME or --all --n N".into()))?;
        let case = NeumannCase::parse(name).map_err(|e| CliFailure::Usage(e.to_string()))?;
        check_cap(case.n, args.force)?;
        vec![case]
    };
    let sample_config = SampleConfig {
        seed: args.seed,
        samples: args.samples,
        ..SampleConfig::default()
    };
    let sign_policy = SignPolicy {
        polya_max: args.polya_max,
    };
    let pivot: PivotPolicy = args.pivot.into();

    use rayon::prelude::*;
    let reports: Vec<crate::oracle::CrossCheckReport> = cases
        .par_iter()
        .map(|case| cross_validate(case, &sample_config, &sign_policy, pivot))
        .collect();

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let agreements = reports.iter().filter(|r| r.agreement).count();
    let lifts: usize = reports.iter().map(|r| r.non_positive_lifts).sum();
    match args.format {
        FormatArg::Json => {
            for report in &reports {
                writeln!(out, "{}", serde_json::to_string(report).unwrap())?;
            }
            let summary = serde_json::json!({
                "summary": {
                    "cases": reports.len(),
                    "agreements": agreements,
                    "non_positive_lifts": lifts,
                    "config": echo(args.seed, args.samples, args.polya_max, args.pivot),
                }
            });
            writeln!(out, "{summary}")?;
        }
        _ => {
            for report in &reports {
                writeln!(
                    out,
                    "{}: symbolic={} samples={} agreement={} singular_retries={}",
                    report.case,
                    report.symbolic,
                    report.samples.len(),
                    if report.agreement { "yes" } else { "NO" },
                    report.singular_retries
                )?;
            }
            writeln!(
                out,
                "{}/{} agreements, {} non-positive lifts",
                agreements,
                reports.len(),
                lifts
            )?;
        }
    }
    Ok(if agreements == reports.len() { 0 } else { 1 })
}
