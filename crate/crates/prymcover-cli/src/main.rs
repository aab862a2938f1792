//! Command-line front end: enumerate covers of a given type, analyze their
//! Prym decompositions, render appendix-style tables, and run the built-in
//! verification suites.
//!
//! Exit codes: 0 success, 2 validation error, 3 cap exceeded,
//! 4 expectation mismatch, 1 internal error.

mod casefile;
mod report;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use casefile::{load_case, CaseFile};
use prymcover::covers::{genus, Quadruple, QuadrupleWire};
use prymcover::enumerate::{
    enumerate, sample_quadruples, DedupMode, EnumerationConfig, SampleConfig, Strategy,
};
use prymcover::perm::PermGroup;
use prymcover::prym::{find_prym_complements, AnalysisOptions, AnalysisReport};

#[derive(Parser)]
#[command(name = "prymcover", version, about = "Decompose Prym varieties of branched covers via Galois closures", long_about = None)]
struct Cli {
    /// Worker threads for enumeration/analysis (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// On-disk cache directory (also PRYMCOVER_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct EnumArgs {
    /// Bundled case name or path to a case JSON file.
    #[arg(long)]
    case: String,
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    #[arg(long, value_enum)]
    dedup: Option<DedupArg>,
    #[arg(long)]
    max_group_order: Option<usize>,
    /// Require X -> Y indecomposable (H_X maximal in H_Y).
    #[arg(long)]
    require_maximal: bool,
    /// Sample this many seeded random tuples instead of enumerating.
    #[arg(long)]
    sample: Option<u64>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(clap::ValueEnum, Clone, Copy)]
enum StrategyArg {
    GroupFirst,
    TupleFirst,
}

#[derive(clap::ValueEnum, Clone, Copy)]
enum DedupArg {
    None,
    Group,
    NSd,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the 4-tuples (G, H_X, H_Y, Sigma) of a cover type; one JSON
    /// line per quadruple.
    Enumerate(EnumArgs),
    /// Analyze quadruples: Chevalley-Weil decomposition and Prym complements.
    Analyze {
        #[command(flatten)]
        source: EnumArgs,
        /// Analyze only the quadruple with this index.
        #[arg(long)]
        index: Option<usize>,
        /// Read one quadruple from a JSON file instead of enumerating
        /// (overrides --case as the source of the quadruple).
        #[arg(long)]
        quadruple: Option<PathBuf>,
        /// Exhaustive subset search for the disjoint family.
        #[arg(long)]
        exhaustive_family: bool,
        /// Include wall-clock timings in the JSON output.
        #[arg(long)]
        timing: bool,
    },
    /// Render the appendix-style table for a list of cases.
    Table {
        /// Bundled names or paths; repeatable.
        #[arg(long = "case", required = false)]
        cases: Vec<String>,
        /// Compare against each case file's expected block; exit 4 on
        /// mismatch.
        #[arg(long)]
        expect: bool,
        /// Emit JSON rows instead of the aligned text table.
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in invariant suites.
    Selftest,
    /// Remove the on-disk cache directory.
    CacheClear,
}

fn effective_cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os("PRYMCOVER_CACHE_DIR").map(PathBuf::from))
}

fn build_config(args: &EnumArgs, case: &CaseFile) -> EnumerationConfig {
    let mut cfg = case.config();
    if let Some(s) = args.strategy {
        cfg.strategy = Some(match s {
            StrategyArg::GroupFirst => Strategy::GroupFirst,
            StrategyArg::TupleFirst => Strategy::TupleFirst,
        });
    }
    if let Some(d) = args.dedup {
        cfg.dedup = match d {
            DedupArg::None => DedupMode::None,
            DedupArg::Group => DedupMode::Group,
            DedupArg::NSd => DedupMode::NormalizerInSd,
        };
    }
    if let Some(m) = args.max_group_order {
        cfg.max_group_order = m;
    }
    if args.require_maximal {
        cfg.require_maximal_hx_in_hy = true;
    }
    if let Some(count) = args.sample {
        cfg.sample = Some(SampleConfig {
            count,
            seed: args.seed,
            acceptance_floor: 0.002,
        });
    }
    cfg
}

/// JSON line for one enumerated quadruple.
fn quadruple_json(index: usize, q: &Quadruple) -> serde_json::Value {
    let trivial = PermGroup::trivial(q.sigma.degree);
    let g_z = genus(&q.sigma, &q.group, &trivial).expect("valid quadruple");
    let g_x = genus(&q.sigma, &q.group, &q.h_x).expect("valid quadruple");
    let g_y = genus(&q.sigma, &q.group, &q.h_y).expect("valid quadruple");
    serde_json::json!({
        "index": index,
        "degree": q.sigma.degree,
        "sigma": q.sigma.sigma,
        "sigma_cycles": q.sigma.sigma.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "group_order": q.group.order(),
        "h_x_generators": q.h_x.generators(),
        "h_y_generators": q.h_y.generators(),
        "g_z": g_z,
        "g_x": g_x,
        "g_y": g_y,
    })
}

enum CliError {
    Validation(String),
    Cap(String),
    Expectation(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Expectation(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Validation(m)
            | CliError::Cap(m)
            | CliError::Expectation(m)
            | CliError::Internal(m) => m,
        }
    }
}

fn classify_enum_error(e: prymcover::enumerate::EnumerateError) -> CliError {
    use prymcover::enumerate::EnumerateError as E;
    use prymcover::perm::GroupError;
    match &e {
        E::Group(GroupError::OrderCapExceeded { .. }) | E::DegreeTooLarge(_) => {
            CliError::Cap(e.to_string())
        }
        E::Cover(_) | E::NoMatchingClass { .. } => CliError::Validation(e.to_string()),
        _ => CliError::Internal(e.to_string()),
    }
}

fn run_case(
    args: &EnumArgs,
) -> Result<(CaseFile, EnumerationConfig, Vec<Quadruple>), CliError> {
    let case = load_case(&args.case).map_err(CliError::Validation)?;
    let cfg = build_config(args, &case);
    let quadruples = if cfg.sample.is_some() {
        let (qs, outcome) =
            sample_quadruples(&case.cover, &cfg).map_err(classify_enum_error)?;
        if let Some(w) = &outcome.warning {
            eprintln!("warning: {w}");
        }
        eprintln!(
            "sampling: {} draws, {} accepted tuples, {} covers after dedup, seed {}",
            outcome.draws, outcome.accepted_tuples, outcome.emitted, outcome.seed
        );
        qs
    } else {
        enumerate(&case.cover, &cfg).map_err(classify_enum_error)?
    };
    Ok((case, cfg, quadruples))
}

fn analyze_all(
    case: &CaseFile,
    quadruples: &[Quadruple],
    options: AnalysisOptions,
) -> Result<Vec<AnalysisReport>, CliError> {
    quadruples
        .par_iter()
        .map(|q| {
            find_prym_complements(q, Some(&case.cover), options)
                .map_err(|e| CliError::Internal(e.to_string()))
        })
        .collect()
}

fn cmd_enumerate(args: &EnumArgs) -> Result<(), CliError> {
    let (_, _, quadruples) = run_case(args)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for (i, q) in quadruples.iter().enumerate() {
        writeln!(out, "{}", quadruple_json(i, q)).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

fn cmd_analyze(
    source: &EnumArgs,
    index: Option<usize>,
    quadruple_file: Option<&PathBuf>,
    exhaustive: bool,
    timing: bool,
) -> Result<(), CliError> {
    let options = AnalysisOptions {
        exhaustive_family: exhaustive,
    };
    let reports: Vec<AnalysisReport> = if let Some(path) = quadruple_file {
        let data = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {path:?}: {e}")))?;
        let wire: QuadrupleWire =
            serde_json::from_str(&data).map_err(|e| CliError::Validation(e.to_string()))?;
        let q = Quadruple::from_wire(wire).map_err(|e| CliError::Validation(e.to_string()))?;
        vec![find_prym_complements(&q, None, options)
            .map_err(|e| CliError::Internal(e.to_string()))?]
    } else {
        let (case, _, quadruples) = run_case(source)?;
        let selected: Vec<Quadruple> = match index {
            Some(i) => {
                let q = quadruples
                    .get(i)
                    .ok_or_else(|| {
                        CliError::Validation(format!(
                            "index {i} out of range ({} quadruples)",
                            quadruples.len()
                        ))
                    })?
                    .clone();
                vec![q]
            }
            None => quadruples,
        };
        analyze_all(&case, &selected, options)?
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for report in reports {
        let report = if timing { report } else { report.canonicalized() };
        writeln!(
            out,
            "{}",
            serde_json::to_string(&report).map_err(|e| CliError::Internal(e.to_string()))?
        )
        .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

fn cmd_table(cases: &[String], expect: bool, json: bool) -> Result<(), CliError> {
    let mut rows = Vec::new();
    let mut issues = Vec::new();
    for spec in cases {
        let args = EnumArgs {
            case: spec.clone(),
            strategy: None,
            dedup: None,
            max_group_order: None,
            require_maximal: false,
            sample: None,
            seed: 7,
        };
        let (case, _, quadruples) = run_case(&args)?;
        let reports = analyze_all(&case, &quadruples, AnalysisOptions::default())?;
        let row = report::build_row(&case, &quadruples, &reports);
        if expect {
            if let Some(block) = &case.expected {
                issues.extend(report::compare_expected(&row, &block.families));
            }
        }
        rows.push(row);
    }
    if json {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        for row in &rows {
            writeln!(
                out,
                "{}",
                serde_json::to_string(row).map_err(|e| CliError::Internal(e.to_string()))?
            )
            .map_err(|e| CliError::Internal(e.to_string()))?;
        }
    } else {
        print!("{}", report::render(&rows));
    }
    if !issues.is_empty() {
        for issue in &issues {
            eprintln!("expectation mismatch: {issue}");
        }
        return Err(CliError::Expectation(format!(
            "{} expectation mismatch(es)",
            issues.len()
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs != 1 {
        let threads = if cli.jobs == 0 { 0 } else { cli.jobs };
        let mut builder = rayon::ThreadPoolBuilder::new();
        if threads > 0 {
            builder = builder.num_threads(threads);
        }
        let _ = builder.build_global();
    } else {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
    }
    let cache_dir = effective_cache_dir(&cli);
    if let Some(dir) = &cache_dir {
        prymcover::chartab::set_cache_dir(Some(dir.clone()));
        prymcover::prym::import_rank_cache(dir);
    }
    let result = match &cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Analyze {
            source,
            index,
            quadruple,
            exhaustive_family,
            timing,
        } => cmd_analyze(source, *index, quadruple.as_ref(), *exhaustive_family, *timing),
        Command::Table { cases, expect, json } => cmd_table(cases, *expect, *json),
        Command::Selftest => selftest::run().map_err(CliError::Internal),
        Command::CacheClear => match &cache_dir {
            Some(dir) => {
                if dir.exists() {
                    std::fs::remove_dir_all(dir)
                        .map_err(|e| CliError::Internal(e.to_string()))
                } else {
                    Ok(())
                }
            }
            None => Err(CliError::Validation(
                "no cache directory configured (use --cache-dir or PRYMCOVER_CACHE_DIR)".into(),
            )),
        },
    };
    if let Some(dir) = &cache_dir {
        let _ = prymcover::prym::export_rank_cache(dir);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
