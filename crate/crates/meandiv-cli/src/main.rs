//! `meandiv` — means, mean-difference divergences, and Bayes-error bounds
//! from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification check fails or a bound
//! falls below the exact error, 2 for usage and input errors.

mod render;

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use meandiv::verify::{CheckStatus, VerificationConfig, VerificationOutcome};
use meandiv::{
    all_means, chained_bounds, csiszar_divergence, mean_difference, sharpness_check,
    symmetric_bound, DiscreteDistribution, GeneratorKind, MeanDiffKind, TwoClassProblem,
};
use render::{csv_cell, format_sig, render_csv, render_table, render_table_with};
use serde_json::json;

/// Significant digits in human tables; CSV always carries full precision.
const TABLE_DIGITS: usize = 9;
/// A bound may undershoot the exact error by at most this before the run is
/// declared broken (exit code 1).
const VALIDITY_SLACK: f64 = 1e-12;

#[derive(Parser)]
#[command(
    name = "meandiv",
    version,
    about = "Mean-difference divergence measures and upper bounds on the Bayes probability of error"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the seven means and the eleven mean differences at (a, b)
    Means(MeansArgs),
    /// Csiszár divergences C_f(p, q) between two discrete distributions
    Divergence(DivergenceArgs),
    /// Error bounds for a two-class problem file
    Bounds(BoundsArgs),
    /// Run the randomized verification suite
    Verify(VerifyArgs),
    /// Full machine-readable JSON report for a two-class problem file
    Report(ReportArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VerifyFormat {
    Table,
    Json,
}

#[derive(Args)]
struct MeansArgs {
    /// First argument, a positive real
    #[arg(allow_negative_numbers = true)]
    a: f64,
    /// Second argument, a positive real
    #[arg(allow_negative_numbers = true)]
    b: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct DivergenceArgs {
    /// First distribution, comma-separated probabilities
    #[arg(long, required = true)]
    p: String,
    /// Second distribution, comma-separated probabilities
    #[arg(long, required = true)]
    q: String,
    /// Divergence kinds: `all` or a comma-separated list (SA, SN2, ...)
    #[arg(long, default_value = "all")]
    kinds: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct BoundsArgs {
    /// JSON problem file: {"priors": [..], "conditionals": [[..], [..]]}
    #[arg(long)]
    problem: String,
    /// Divergence kinds: `all` or a comma-separated list (SA, SN2, ...)
    #[arg(long, default_value = "all")]
    kinds: String,
    /// Also print chained bounds and sharpness margins
    #[arg(long)]
    chained: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Trials per check
    #[arg(long, default_value_t = meandiv::verify::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = meandiv::verify::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = meandiv::verify::DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Alphabet sizes cycled by the bound-validity check
    #[arg(long, value_delimiter = ',', default_values_t = meandiv::verify::DEFAULT_ALPHABET_SIZES)]
    alphabet_sizes: Vec<usize>,
    #[arg(long, value_enum, default_value_t = VerifyFormat::Table)]
    format: VerifyFormat,
    /// Inject one failing outcome to exercise the exit-code path (self-test)
    #[arg(long, hide = true)]
    negative_control: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON problem file: {"priors": [..], "conditionals": [[..], [..]]}
    #[arg(long)]
    problem: String,
    /// Divergence kinds: `all` or a comma-separated list (SA, SN2, ...)
    #[arg(long, default_value = "all")]
    kinds: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Means(args) => run_means(args),
        Command::Divergence(args) => run_divergence(args),
        Command::Bounds(args) => run_bounds(args),
        Command::Verify(args) => run_verify(args),
        Command::Report(args) => run_report(args),
    }
}

/// Write a whole report to stdout. A closed pipe (`meandiv ... | head`) is a
/// normal way for the reader to stop and ends the process quietly.
fn emit(text: &str) -> Result<(), String> {
    use std::io::{ErrorKind, Write};
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(format!("cannot write to stdout: {e}")),
    }
}

fn check_positive_argument(name: &str, value: f64) -> Result<(), String> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(format!(
            "argument '{name}' must be a positive finite number, got {value}"
        ))
    }
}

fn parse_kinds(list: &str) -> Result<Vec<GeneratorKind>, String> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(GeneratorKind::ALL.to_vec());
    }
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| GeneratorKind::from_str(s).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()
        .and_then(|kinds| {
            if kinds.is_empty() {
                Err("option '--kinds' needs at least one kind".to_owned())
            } else {
                Ok(kinds)
            }
        })
}

fn parse_distribution(flag: &str, list: &str) -> Result<DiscreteDistribution, String> {
    let values = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| format!("option '--{flag}': not a number: {s:?}"))
        })
        .collect::<Result<Vec<f64>, String>>()?;
    DiscreteDistribution::new(values).map_err(|e| format!("option '--{flag}': {e}"))
}

fn load_problem(path: &str) -> Result<TwoClassProblem, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read problem file {path:?}: {e}"))?;
    TwoClassProblem::from_json(&text).map_err(|e| format!("problem file {path:?}: {e}"))
}

fn run_means(args: MeansArgs) -> Result<u8, String> {
    check_positive_argument("a", args.a)?;
    check_positive_argument("b", args.b)?;
    let means = all_means(args.a, args.b).map_err(|e| e.to_string())?;
    let differences: Vec<(MeanDiffKind, f64)> = MeanDiffKind::ALL
        .into_iter()
        .map(|kind| {
            let value = mean_difference(kind, args.a, args.b).expect("validated arguments");
            (kind, value)
        })
        .collect();
    let output = match args.format {
        Format::Table => {
            let mean_rows: Vec<Vec<String>> = means
                .iter()
                .map(|(k, v)| vec![k.to_string(), format_sig(*v, TABLE_DIGITS)])
                .collect();
            let diff_rows: Vec<Vec<String>> = differences
                .iter()
                .map(|(k, v)| vec![k.to_string(), format_sig(*v, TABLE_DIGITS)])
                .collect();
            format!(
                "{}\n{}",
                render_table(&["mean", "value"], &mean_rows),
                render_table(&["difference", "value"], &diff_rows)
            )
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = means
                .iter()
                .map(|(k, v)| vec!["mean".to_owned(), k.to_string(), csv_cell(*v)])
                .collect();
            rows.extend(
                differences
                    .iter()
                    .map(|(k, v)| vec!["difference".to_owned(), k.to_string(), csv_cell(*v)]),
            );
            render_csv(&["type", "kind", "value"], &rows)
        }
    };
    emit(&output)?;
    Ok(0)
}

fn run_divergence(args: DivergenceArgs) -> Result<u8, String> {
    let kinds = parse_kinds(&args.kinds)?;
    let p = parse_distribution("p", &args.p)?;
    let q = parse_distribution("q", &args.q)?;
    let rows: Vec<(GeneratorKind, f64)> = kinds
        .iter()
        .map(|&kind| {
            csiszar_divergence(kind, &p, &q)
                .map(|value| (kind, value))
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let output = match args.format {
        Format::Table => {
            let table_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(k, v)| vec![k.to_string(), format_sig(*v, TABLE_DIGITS)])
                .collect();
            render_table(&["kind", "divergence"], &table_rows)
        }
        Format::Csv => {
            let csv_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(k, v)| vec![k.to_string(), csv_cell(*v)])
                .collect();
            render_csv(&["kind", "divergence"], &csv_rows)
        }
    };
    emit(&output)?;
    Ok(0)
}

const BOUND_COLUMNS: [&str; 6] = [
    "kind",
    "divergence",
    "coefficient",
    "bound",
    "exact_error",
    "slack",
];

fn run_bounds(args: BoundsArgs) -> Result<u8, String> {
    let kinds = parse_kinds(&args.kinds)?;
    let problem = load_problem(&args.problem)?;
    let reports: Vec<_> = kinds
        .iter()
        .map(|&kind| symmetric_bound(kind, &problem))
        .collect();

    let number = |v: f64, format: Format| match format {
        Format::Table => format_sig(v, TABLE_DIGITS),
        Format::Csv => csv_cell(v),
    };
    let bound_rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.kind.to_string(),
                number(r.divergence, args.format),
                number(r.coefficient, args.format),
                number(r.bound, args.format),
                number(r.exact_error, args.format),
                number(r.slack, args.format),
            ]
        })
        .collect();
    let mut output = match args.format {
        Format::Table => render_table(&BOUND_COLUMNS, &bound_rows),
        Format::Csv => render_csv(&BOUND_COLUMNS, &bound_rows),
    };

    if args.chained {
        let chained_columns = [
            "chain",
            "source_kind",
            "chain_coefficient",
            "chained_bound",
            "direct_bound",
        ];
        let chained_rows: Vec<Vec<String>> = chained_bounds(&problem)
            .iter()
            .map(|c| {
                vec![
                    c.chain.to_string(),
                    c.source_kind.to_string(),
                    number(c.chain_coefficient, args.format),
                    number(c.chained_bound, args.format),
                    number(c.direct_bound, args.format),
                ]
            })
            .collect();
        let sharpness_columns = [
            "kind",
            "direct_coefficient",
            "chained_coefficient",
            "direct_bound",
            "chained_bound",
            "margin",
        ];
        let sharpness_rows: Vec<Vec<String>> = sharpness_check(&problem)
            .iter()
            .map(|s| {
                vec![
                    s.kind.to_string(),
                    number(s.direct_coefficient, args.format),
                    number(s.chained_coefficient, args.format),
                    number(s.direct_bound, args.format),
                    number(s.chained_bound, args.format),
                    number(s.margin, args.format),
                ]
            })
            .collect();
        let (chained_block, sharpness_block) = match args.format {
            Format::Table => (
                render_table_with(&chained_columns, &chained_rows, 2),
                render_table(&sharpness_columns, &sharpness_rows),
            ),
            Format::Csv => (
                render_csv(&chained_columns, &chained_rows),
                render_csv(&sharpness_columns, &sharpness_rows),
            ),
        };
        output.push('\n');
        output.push_str(&chained_block);
        output.push('\n');
        output.push_str(&sharpness_block);
    }
    emit(&output)?;

    // A bound below the exact error means the implementation is broken.
    for r in &reports {
        if r.slack < -VALIDITY_SLACK {
            eprintln!(
                "bound violation: kind {} bound {} < exact error {}",
                r.kind, r.bound, r.exact_error
            );
            return Ok(1);
        }
    }
    Ok(0)
}

fn outcome_rows(outcomes: &[VerificationOutcome]) -> Vec<Vec<String>> {
    outcomes
        .iter()
        .map(|o| {
            vec![
                match o.status {
                    CheckStatus::Pass => "PASS".to_owned(),
                    CheckStatus::Fail => "FAIL".to_owned(),
                    CheckStatus::Erratum => "ERRATUM".to_owned(),
                },
                o.check_name.clone(),
                o.trials.to_string(),
                o.failures.to_string(),
                format!("{:.3e}", o.worst_violation),
            ]
        })
        .collect()
}

fn run_verify(args: VerifyArgs) -> Result<u8, String> {
    let config = VerificationConfig {
        samples: args.samples,
        seed: args.seed,
        tolerance: args.tolerance,
        alphabet_sizes: args.alphabet_sizes.clone(),
    };
    let mut outcomes = meandiv::verify::run_all(&config).map_err(|e| e.to_string())?;
    if args.negative_control {
        outcomes.push(VerificationOutcome {
            check_name: "negative-control".to_owned(),
            status: CheckStatus::Fail,
            trials: 1,
            failures: 1,
            worst_violation: 1.0,
            witness: Some("injected failure for exit-code self-test".to_owned()),
        });
    }

    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    let errata = outcomes
        .iter()
        .filter(|o| o.status == CheckStatus::Erratum)
        .count();

    let output = match args.format {
        VerifyFormat::Table => {
            let mut text = render_table_with(
                &["status", "check", "trials", "failures", "worst"],
                &outcome_rows(&outcomes),
                2,
            );
            for o in &outcomes {
                if let Some(witness) = &o.witness {
                    text.push_str(&format!("note {}: {witness}\n", o.check_name));
                }
            }
            text.push_str(&format!(
                "checks: {}, passed: {}, failed: {failed}, errata: {errata}\n",
                outcomes.len(),
                outcomes.len() - failed - errata,
            ));
            text
        }
        VerifyFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&outcomes).expect("outcomes serialize")
        ),
    };
    emit(&output)?;
    Ok(if failed > 0 { 1 } else { 0 })
}

fn run_report(args: ReportArgs) -> Result<u8, String> {
    let kinds = parse_kinds(&args.kinds)?;
    let problem = load_problem(&args.problem)?;
    let reports: Vec<_> = kinds
        .iter()
        .map(|&kind| symmetric_bound(kind, &problem))
        .collect();
    let document = json!({
        "problem": {
            "priors": [problem.prior1(), problem.prior2()],
            "conditionals": [problem.cond1().mass(), problem.cond2().mass()],
        },
        "exact_error": problem.bayes_error(),
        "bounds": reports,
        "chained": chained_bounds(&problem),
        "sharpness": sharpness_check(&problem),
    });
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(&document).expect("report serializes")
    ))?;
    Ok(0)
}
