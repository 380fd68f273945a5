//! Command-line interface for the semigroup tree library.
//!
//! Subcommands: `count` (per-genus tables), `tree` (DOT / TikZ / JSON
//! exports), `classify` (one-semigroup JSON report) and `verify` (formula
//! against enumeration suites).

use std::collections::HashSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sgtree::chains::{self, ChainCount};
use sgtree::export::{self, HighlightSet, LabelStyle, TreeExportOptions};
use sgtree::families::{self, M6Label};
use sgtree::formulas::{self, FormulaReport};
use sgtree::semigroup::NumericalSemigroup;
use sgtree::tree;

#[derive(Parser)]
#[command(
    name = "sgtree",
    version,
    about = "Numerical semigroup tree: counting, classification, verification and figures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FilterKind {
    /// Keep only semigroups lying in infinite chains.
    Infinitechains,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CountFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Dot,
    Tikz,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Prime,
    M4,
    M6,
    Fertile,
    Majority,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print per-genus counts, optionally restricted by multiplicity or to
    /// infinite-chain members.
    Count {
        /// Largest genus to count up to.
        #[arg(long)]
        genus: u64,
        /// Count only semigroups of this multiplicity.
        #[arg(long)]
        multiplicity: Option<u64>,
        /// Add a filtered column.
        #[arg(long, value_enum)]
        filter: Option<FilterKind>,
        #[arg(long, value_enum, default_value = "csv")]
        format: CountFormat,
        /// Worker threads for the enumeration.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Export a (sub)tree as DOT, TikZ or JSON.
    Tree {
        /// Largest genus to include.
        #[arg(long)]
        genus: u64,
        /// Root the tree at the ordinary semigroup of this multiplicity.
        #[arg(long)]
        multiplicity: Option<u64>,
        #[arg(long, value_enum)]
        filter: Option<FilterKind>,
        /// Drop the ordinary child branch so only nodes of the chosen
        /// multiplicity remain (requires --multiplicity).
        #[arg(long)]
        trim: bool,
        #[arg(long, value_enum, default_value = "dot")]
        format: TreeFormat,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Highlight classes: tau:<n>, gamma-chain:<n> or nu-chain:<n>.
        #[arg(long)]
        highlight: Vec<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print a JSON report for one semigroup.
    Classify {
        /// Comma-separated gap set.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "gens",
            required_unless_present = "gens"
        )]
        gaps: Option<Vec<u64>>,
        /// Comma-separated generator set.
        #[arg(long, value_delimiter = ',')]
        gens: Option<Vec<u64>>,
    },
    /// Check the counting formulas against enumeration.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest genus per suite; per-suite defaults when absent.
    #[arg(long)]
    max_genus: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Count {
            genus,
            multiplicity,
            filter,
            format,
            jobs,
        } => run_count(genus, multiplicity, filter, format, jobs),
        Command::Tree {
            genus,
            multiplicity,
            filter,
            trim,
            format,
            out,
            highlight,
            jobs,
        } => run_tree(genus, multiplicity, filter, trim, format, out, &highlight, jobs),
        Command::Classify { gaps, gens } => run_classify(gaps, gens),
        Command::Verify(args) => run_verify(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

#[derive(Serialize)]
struct CountRow {
    genus: u64,
    count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    filtered_count: Option<u64>,
}

fn run_count(
    genus: u64,
    multiplicity: Option<u64>,
    filter: Option<FilterKind>,
    format: CountFormat,
    jobs: usize,
) -> Result<(), CliError> {
    if multiplicity == Some(0) {
        return Err(CliError::usage("--multiplicity must be positive"));
    }
    let root = match multiplicity {
        Some(m) => tree::multiplicity_subtree_root(m),
        None => NumericalSemigroup::trivial(),
    };
    let base = |s: &NumericalSemigroup| multiplicity.is_none_or(|m| s.multiplicity() == m);
    let totals = tree::enumerate_counts(&root, genus, &base, jobs);
    let filtered = filter.map(|FilterKind::Infinitechains| {
        tree::enumerate_counts(
            &root,
            genus,
            &|s: &NumericalSemigroup| base(s) && chains::in_infinite_chain(s),
            jobs,
        )
    });
    let rows: Vec<CountRow> = (0..=genus)
        .map(|g| CountRow {
            genus: g,
            count: totals.get(g),
            filtered_count: filtered.as_ref().map(|f| f.get(g)),
        })
        .collect();
    match format {
        CountFormat::Csv => {
            if filtered.is_some() {
                println!("genus,count,filtered_count");
                for r in rows {
                    println!("{},{},{}", r.genus, r.count, r.filtered_count.unwrap());
                }
            } else {
                println!("genus,count");
                for r in rows {
                    println!("{},{}", r.genus, r.count);
                }
            }
        }
        CountFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&rows).expect("rows serialize")
            );
        }
    }
    Ok(())
}

fn parse_highlights(entries: &[String], max_genus: u64) -> Result<Vec<HighlightSet>, CliError> {
    let mut out = Vec::new();
    for entry in entries {
        let (class, n) = entry
            .split_once(':')
            .ok_or_else(|| CliError::usage(format!("bad highlight '{entry}', expected class:n")))?;
        let n: u64 = n
            .parse()
            .map_err(|_| CliError::usage(format!("bad highlight index in '{entry}'")))?;
        if n < 1 {
            return Err(CliError::usage(format!(
                "highlight index in '{entry}' must be positive"
            )));
        }
        let members: HashSet<Vec<u64>> = match class {
            "tau" => families::m6_labeled_nodes(n)
                .iter()
                .map(|s| s.key())
                .collect(),
            "gamma-chain" => {
                families::chain_descent(&families::m6_family(M6Label::S, n), max_genus)
                    .iter()
                    .map(|s| s.key())
                    .collect()
            }
            "nu-chain" => {
                families::chain_descent(&families::m6_family(M6Label::V, n), max_genus)
                    .iter()
                    .map(|s| s.key())
                    .collect()
            }
            other => {
                return Err(CliError::usage(format!(
                    "unknown highlight class '{other}' (expected tau, gamma-chain or nu-chain)"
                )))
            }
        };
        out.push(HighlightSet {
            class: class.to_string(),
            members,
        });
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn run_tree(
    genus: u64,
    multiplicity: Option<u64>,
    filter: Option<FilterKind>,
    trim: bool,
    format: TreeFormat,
    out: Option<PathBuf>,
    highlight: &[String],
    jobs: usize,
) -> Result<(), CliError> {
    if multiplicity == Some(0) {
        return Err(CliError::usage("--multiplicity must be positive"));
    }
    if trim && multiplicity.is_none() {
        return Err(CliError::usage("--trim requires --multiplicity"));
    }
    let root = match multiplicity {
        Some(m) => tree::multiplicity_subtree_root(m),
        None => NumericalSemigroup::trivial(),
    };
    if genus < root.genus() {
        return Err(CliError::usage(format!(
            "--genus must be at least the root genus {}",
            root.genus()
        )));
    }
    let opts = TreeExportOptions {
        max_genus: genus,
        chain_filter: matches!(filter, Some(FilterKind::Infinitechains)),
        trim_multiplicity: trim.then(|| multiplicity.expect("checked")),
        label_style: match multiplicity {
            Some(m) => LabelStyle::Tuple { multiplicity: m },
            None => LabelStyle::SetNotation,
        },
        highlights: parse_highlights(highlight, genus)?,
        jobs,
    };
    let graph = export::build_tree_graph(&root, &opts);
    let rendered = match format {
        TreeFormat::Dot => graph.to_dot(),
        TreeFormat::Tikz => graph.to_tikz(),
        TreeFormat::Json => graph.to_json(),
    };
    match out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| CliError::failure(format!("writing {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .map_err(|e| CliError::failure(format!("writing standard output: {e}")))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum ChainCountJson {
    Finite { chains: u64 },
    Infinite,
    NotInChain,
}

#[derive(Serialize)]
struct ClassifyRecord {
    gaps: Vec<u64>,
    genus: u64,
    multiplicity: u64,
    conductor: u64,
    frobenius: i64,
    minimal_generators: Vec<u64>,
    effective_generators: Vec<u64>,
    efficacy: u64,
    node_class: &'static str,
    ordinary: bool,
    hyperelliptic: bool,
    in_infinite_chain: bool,
    left_gcd: Option<u64>,
    chain_count: ChainCountJson,
    fertile: bool,
    type_c: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_descendant: Option<Vec<u64>>,
}

fn run_classify(gaps: Option<Vec<u64>>, gens: Option<Vec<u64>>) -> Result<(), CliError> {
    let s = match (gaps, gens) {
        (Some(gaps), None) => NumericalSemigroup::from_gaps(gaps),
        (None, Some(gens)) => NumericalSemigroup::from_generators(&gens),
        _ => return Err(CliError::usage("pass exactly one of --gaps or --gens")),
    }
    .map_err(|e| CliError::usage(e.to_string()))?;
    let left_gcd = chains::left_gcd(&s).ok();
    let chain_count = match chains::count_infinite_chains(&s) {
        Ok(ChainCount::Finite(n)) => ChainCountJson::Finite { chains: n },
        Ok(ChainCount::Infinite) => ChainCountJson::Infinite,
        Err(_) => ChainCountJson::NotInChain,
    };
    let max_descendant = chains::max_descendant(&s).ok().map(|d| d.key());
    let record = ClassifyRecord {
        gaps: s.gaps(),
        genus: s.genus(),
        multiplicity: s.multiplicity(),
        conductor: s.conductor(),
        frobenius: s.frobenius(),
        minimal_generators: s.minimal_generators(),
        effective_generators: s.effective_generators(),
        efficacy: tree::efficacy(&s),
        node_class: tree::classify_node(&s).as_str(),
        ordinary: s.is_ordinary(),
        hyperelliptic: s.is_hyperelliptic(),
        in_infinite_chain: chains::in_infinite_chain(&s),
        left_gcd,
        chain_count,
        fertile: chains::is_fertile(&s),
        type_c: chains::is_type_c(&s),
        max_descendant,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&record).expect("record serializes")
    );
    Ok(())
}

fn print_report(report: &FormulaReport) {
    println!(
        "suite {} ({} rows, {:.2}s)",
        report.suite,
        report.rows.len(),
        report.elapsed.as_secs_f64()
    );
    println!("{:>12} {:>10} {:>10}  ok", "case", "formula", "enumerated");
    for row in &report.rows {
        println!(
            "{:>12} {:>10} {:>10}  {}",
            row.label,
            row.formula,
            row.enumerated,
            if row.ok { "yes" } else { "NO" }
        );
    }
    for note in &report.notes {
        println!("note: {note}");
    }
}

fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::Prime,
            Suite::M4,
            Suite::M6,
            Suite::Fertile,
            Suite::Majority,
        ],
        s => vec![s],
    };
    let mut first_failure: Option<String> = None;
    for suite in suites {
        let report = match suite {
            Suite::Prime => formulas::verify_prime_suite(args.max_genus.unwrap_or(30), args.jobs),
            Suite::M4 => formulas::verify_m4_suite(args.max_genus.unwrap_or(40), args.jobs),
            Suite::M6 => formulas::verify_m6_suite(args.max_genus.unwrap_or(40), args.jobs),
            Suite::Fertile => formulas::verify_fertile_suite(args.max_genus.unwrap_or(18)),
            Suite::Majority => {
                formulas::verify_majority_suite(args.max_genus.unwrap_or(22), args.jobs)
            }
            Suite::All => unreachable!("expanded above"),
        };
        print_report(&report);
        if first_failure.is_none() {
            if let Some(row) = report.first_failure() {
                first_failure = Some(format!("suite {} at {}", report.suite, row.label));
            }
        }
        println!();
    }
    match first_failure {
        Some(w) => Err(CliError::failure(format!("first mismatch in {w}"))),
        None => Ok(()),
    }
}
