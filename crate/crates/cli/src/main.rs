use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fintype::format::{format_polynomial, IdealFile};
use fintype::jet::ProbeStrategy;
use fintype::oracle::{cross_check, OracleConfig};
use fintype::{nss_report, probe_type, ttype, type_m_primary, witness_curves, Error, MonomialIdeal};
use rayon::prelude::*;

mod render;
mod report;

use report::{BatchDocument, BatchEntry, CommandResult, ProbeStatus, ReportDocument, SCHEMA_VERSION};

const EXIT_INTERNAL: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_PRECONDITION: i32 = 3;
const EXIT_VIOLATION: i32 = 4;

/// Exact type invariants and Nullstellensatz checks for monomial ideals.
#[derive(Parser, Debug)]
#[command(name = "fintype", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest arc weight for `probe`; weight bound of the brute-force oracle.
    #[arg(long, global = true)]
    weight_bound: Option<u32>,

    /// Initial jet truncation for `probe`.
    #[arg(long, global = true, default_value_t = fintype::jet::DEFAULT_TRUNCATION)]
    trunc: usize,

    /// Seed for generic arc coefficients.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Run every `*.ideal` file in a directory.
    #[arg(long, global = true, value_name = "DIR")]
    batch: Option<PathBuf>,

    /// Cross-check against the brute-force oracles.
    #[arg(long, global = true)]
    oracle: bool,

    /// Include wall-clock time in JSON output.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
enum Command {
    /// Type of an m-primary monomial ideal, with its boundary type.
    Type(Input),
    /// Nullstellensatz invariant of a monomial ideal.
    Ttype(Input),
    /// Effective Nullstellensatz, Briançon-Skoda and degree-bound checks.
    Nss(Input),
    /// Lower bound for the type of a polynomial ideal from truncated arcs.
    Probe(Input),
    /// Witness curves attaining the Nullstellensatz invariant.
    Curves(Input),
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
struct Input {
    /// Ideal file; omit with --batch.
    file: Option<PathBuf>,
}

impl Command {
    fn input(&self) -> &Input {
        match self {
            Command::Type(i) | Command::Ttype(i) | Command::Nss(i) | Command::Probe(i) | Command::Curves(i) => i,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Type(_) => "type",
            Command::Ttype(_) => "ttype",
            Command::Nss(_) => "nss",
            Command::Probe(_) => "probe",
            Command::Curves(_) => "curves",
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::TheoremViolation { .. } => EXIT_VIOLATION,
            Error::NotMPrimary
            | Error::NotMonomial { .. }
            | Error::ZeroIdeal
            | Error::UnitIdeal
            | Error::NonVanishingGenerator { .. }
            | Error::DimensionMismatch { .. }
            | Error::EmptyAmbientSpace
            | Error::Config(_) => EXIT_PRECONDITION,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

struct Outcome {
    doc: ReportDocument,
    code: i32,
    note: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match (&cli.batch, &cli.command.input().file) {
        (Some(dir), None) => run_batch(&cli, dir),
        (None, Some(path)) => run_single(&cli, path),
        (Some(_), Some(_)) => usage("give either a file or --batch, not both"),
        (None, None) => usage("missing input file"),
    };
    ExitCode::from(code as u8)
}

fn usage(message: &str) -> i32 {
    eprintln!("error: {message}");
    eprintln!("usage: fintype <COMMAND> <FILE> [OPTIONS] | fintype <COMMAND> --batch <DIR> [OPTIONS]");
    EXIT_PARSE
}

fn run_single(cli: &Cli, path: &Path) -> i32 {
    let start = Instant::now();
    match run_file(cli, path) {
        Ok(mut outcome) => {
            let elapsed = start.elapsed();
            if cli.timing {
                outcome.doc.elapsed_ms = Some(elapsed.as_millis() as u64);
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcome.doc).expect("report serializes"));
            } else {
                print!("{}", render::render(&outcome.doc));
                println!("elapsed: {} ms", elapsed.as_millis());
            }
            if let Some(note) = outcome.note {
                eprintln!("error: {note}");
            }
            outcome.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn run_batch(cli: &Cli, dir: &Path) -> i32 {
    let entries = match fs::read_dir(dir) {
        Ok(entries) => entries,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", dir.display());
            return EXIT_PARSE;
        }
    };
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "ideal"))
        .collect();
    files.sort();

    let start = Instant::now();
    let results: Vec<BatchEntry> = files
        .par_iter()
        .map(|path| {
            let file = path.file_name().expect("listed file").to_string_lossy().into_owned();
            match run_file(cli, path) {
                Ok(outcome) => BatchEntry {
                    file,
                    exit_code: outcome.code,
                    report: Some(outcome.doc),
                    error: outcome.note,
                },
                Err(f) => BatchEntry {
                    file,
                    exit_code: f.code,
                    report: None,
                    error: Some(f.message),
                },
            }
        })
        .collect();
    let code = results.iter().map(|e| e.exit_code).max().unwrap_or(0);

    if cli.json {
        let doc = BatchDocument {
            schema_version: SCHEMA_VERSION,
            command: cli.command.name().into(),
            entries: results,
        };
        println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
    } else {
        for entry in &results {
            println!("== {} (exit {})", entry.file, entry.exit_code);
            if let Some(doc) = &entry.report {
                print!("{}", render::render(doc));
            }
            if let Some(error) = &entry.error {
                println!("error: {error}");
            }
        }
        println!("{} files, elapsed: {} ms", results.len(), start.elapsed().as_millis());
    }
    code
}

fn run_file(cli: &Cli, path: &Path) -> Result<Outcome, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let file = IdealFile::parse(&text)?;
    let seed = cli.seed;

    let result = match cli.command {
        Command::Type(_) => {
            let ideal = file.monomial_ideal()?;
            let report = type_m_primary(&ideal)?;
            CommandResult::Type(report::type_section(&report, ideal.dim_zero_locus()?))
        }
        Command::Ttype(_) => {
            let ideal = file.monomial_ideal()?;
            let report = ttype(&ideal)?;
            CommandResult::Ttype(report::type_section(&report, ideal.dim_zero_locus()?))
        }
        Command::Nss(_) => {
            let ideal = file.monomial_ideal()?;
            CommandResult::Nss(report::nss_section(&nss_report(&ideal)?, &file.vars))
        }
        Command::Probe(_) => {
            let strategy = ProbeStrategy {
                weight_bound: cli.weight_bound.unwrap_or(ProbeStrategy::default().weight_bound),
                truncation: cli.trunc,
                seed,
            };
            let outcome = probe_type(&file.polynomial_ideal()?, &strategy)?;
            let status = match exact_type(&file)? {
                Some(t) if t == outcome.lower_bound => ProbeStatus::Exact,
                _ => ProbeStatus::LowerBound,
            };
            CommandResult::Probe(report::probe_section(
                &outcome,
                status,
                strategy.weight_bound,
                strategy.truncation,
                seed,
            ))
        }
        Command::Curves(_) => {
            let ideal = file.monomial_ideal()?;
            let report = ttype(&ideal)?;
            let curves = witness_curves(&report, seed)?;
            CommandResult::Curves(report::curves_section(&report, &curves, seed))
        }
    };

    let mut code = 0;
    let mut note = None;
    let oracle = if cli.oracle && file.is_monomial() {
        let mut cfg = OracleConfig::default();
        if let Some(b) = cli.weight_bound {
            cfg.weight_bound = b;
        }
        let check = cross_check(&file.monomial_ideal()?, &cfg)?;
        if !check.passed() {
            code = EXIT_VIOLATION;
            note = Some(format!("oracle disagreement: {check:?}"));
        }
        Some(report::oracle_section(&check, cfg.weight_bound))
    } else {
        None
    };

    let doc = ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: cli.command.name().into(),
        input: path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        ambient_dim: file.ambient_dim(),
        vars: file.vars.clone(),
        generators: file.generators.iter().map(|g| format_polynomial(g, &file.vars)).collect(),
        result,
        oracle,
        elapsed_ms: None,
    };
    Ok(Outcome { doc, code, note })
}

/// `T(I)` when the file is an m-primary monomial ideal.
fn exact_type(file: &IdealFile) -> Result<Option<fintype::Rational>, Failure> {
    if !file.is_monomial() {
        return Ok(None);
    }
    let ideal: MonomialIdeal = file.monomial_ideal()?;
    if !ideal.is_m_primary()? {
        return Ok(None);
    }
    Ok(Some(type_m_primary(&ideal)?.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_mapping() {
        let code = |e: Error| Failure::from(e).code;
        assert_eq!(code(Error::Parse { line: 3, message: "x".into() }), EXIT_PARSE);
        assert_eq!(code(Error::NotMPrimary), EXIT_PRECONDITION);
        assert_eq!(code(Error::NotMonomial { index: 1 }), EXIT_PRECONDITION);
        assert_eq!(
            code(Error::TheoremViolation {
                check: "briancon-skoda".into(),
                detail: "(1,1)".into()
            }),
            EXIT_VIOLATION
        );
        assert_eq!(code(Error::SolverFailure("lp".into())), EXIT_INTERNAL);
    }
}
