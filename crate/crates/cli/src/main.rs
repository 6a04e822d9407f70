//! `milnor`: invariant reports, the verification harness, table regeneration
//! and seeded move walks.
//!
//! Exit codes: 0 success, 1 parse or missing-file error, 2 wrong component
//! count, 3 verification failure, 4 table mismatch.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use milnor_core::harness::{self, Summary, VerifyConfig};
use milnor_core::invariants::parse_rational;
use milnor_core::moves::parse_move_table;
use milnor_core::tables::{self, DataDir, TablesError, TablesReport};
use milnor_core::{
    compile_bouquet, load_pattern_library, parse_bouquet, parse_gauss_code, serialize_gauss_code,
    GaussDiagram, InvariantError, Invariants, MoveTable, PatternError, Permutation, Rational,
    Report,
};

#[derive(Parser)]
#[command(
    name = "milnor",
    version,
    about = "Gauss diagram invariants of 3-component links and 3-bouquet graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Data directory with patterns.txt, moves.txt and the table transcriptions.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a Gauss code or bouquet file (standard input if no path).
    Compute {
        path: Option<PathBuf>,
        /// Also report (1 − t)·μ₁₂₃ + t·P_hat.
        #[arg(long, value_parser = parse_t)]
        t: Option<Rational>,
    },
    /// Seeded property checks of every invariance claim.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Recomputes the value tables and diffs them against the golden files.
    Tables,
    /// A seeded random walk of Reidemeister moves from a diagram (the unlink if no path).
    Walk {
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
}

fn parse_t(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        let code = match e {
            InvariantError::ComponentCount(_)
            | InvariantError::Pattern(PatternError::ComponentCount(_)) => 2,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<TablesError> for Failure {
    fn from(e: TablesError) -> Self {
        match e {
            TablesError::Invariant { source, path } => {
                let f = Failure::from(source);
                Failure::new(f.code, format!("{}: {}", path.display(), f.message))
            }
            other => Failure::new(1, other.to_string()),
        }
    }
}

struct Library {
    data: DataDir,
    invariants: Invariants,
    moves: MoveTable,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", path.display())))
}

fn load(data: Option<&Path>) -> Result<Library, Failure> {
    let data = data.map(DataDir::new).unwrap_or_else(DataDir::shipped);
    let patterns = read(&data.root.join("patterns.txt"))?;
    let library = load_pattern_library(&patterns)
        .map_err(|e| Failure::new(1, format!("patterns.txt: {e}")))?;
    let invariants =
        Invariants::new(&library).map_err(|e| Failure::new(1, format!("patterns.txt: {e}")))?;
    let moves = parse_move_table(&read(&data.root.join("moves.txt"))?)
        .map_err(|e| Failure::new(1, format!("moves.txt: {e}")))?;
    Ok(Library {
        data,
        invariants,
        moves,
    })
}

fn read_input(path: Option<&Path>) -> Result<(String, String), Failure> {
    match path {
        Some(p) => Ok((p.display().to_string(), read(p)?)),
        None => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::new(1, format!("cannot read standard input: {e}")))?;
            Ok(("<stdin>".into(), text))
        }
    }
}

/// Gauss code, or a bouquet when the first content line is `bouquet`.
fn parse_input(name: &str, text: &str) -> Result<GaussDiagram, Failure> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    let parsed = if first == Some("bouquet") {
        parse_bouquet(text)
            .and_then(|b| compile_bouquet(&b))
            .map_err(|e| e.to_string())
    } else {
        parse_gauss_code(text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| Failure::new(1, format!("{name}: {e}")))
}

fn report_text(r: &Report) -> String {
    let mut rows: Vec<(String, String)> = Vec::new();
    for (pair, v) in &r.lk {
        rows.push((format!("lk{pair}"), v.to_string()));
    }
    let residue = |res: Option<u64>, m: u64| match res {
        Some(x) => format!("{x} mod {m}"),
        None => "unreduced".into(),
    };
    rows.push((
        "mu123".into(),
        format!(
            "{}  ({})",
            r.mu123.raw.0,
            residue(r.mu123.residue, r.mu123.modulus)
        ),
    ));
    rows.push(("p_even".into(), r.p_even.0.to_string()));
    rows.push(("p_odd".into(), r.p_odd.0.to_string()));
    rows.push(("p_hat".into(), r.p_hat.0.to_string()));
    rows.push((
        "p1".into(),
        format!(
            "{}  ({})",
            r.p1,
            residue(r.p_reduced.p1, r.p_reduced.modulus)
        ),
    ));
    rows.push((
        "p2".into(),
        format!(
            "{}  ({})",
            r.p2,
            residue(r.p_reduced.p2, r.p_reduced.modulus)
        ),
    ));
    for sigma in Permutation::ALL {
        let q = r.q[sigma.name()];
        rows.push((format!("q {sigma}"), format!("{} {} {}", q[0], q[1], q[2])));
    }
    if let Some(m) = &r.mu_t {
        rows.push((format!("mu_t (t = {})", m.t.0), m.value.0.to_string()));
    }
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:width$}  {v}\n"))
        .collect()
}

fn summary_json(s: &Summary) -> Value {
    json!({
        "seed": s.seed,
        "passed": s.passed(),
        "properties": s.results.iter().map(|r| json!({
            "name": r.name,
            "cases": r.cases,
            "failures": r.failures,
            "counterexample": r.counterexample.as_ref().map(|c| json!({
                "description": c.description,
                "diagram": serialize_gauss_code(&c.diagram),
            })),
        })).collect::<Vec<_>>(),
    })
}

fn tables_json(t: &TablesReport) -> Value {
    json!({
        "tables": t.tables.iter().map(|t| json!({
            "name": t.name,
            "columns": t.columns,
            "rows": t.rows.iter().map(|r| json!({"label": r.label, "cells": r.cells})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "diffs": t.diffs.iter().map(|d| json!({
            "table": d.table, "row": d.row, "column": d.column,
            "computed": d.computed, "expected": d.expected,
        })).collect::<Vec<_>>(),
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

/// Runs the command; returns the text for standard output and the exit code.
fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let lib = load(cli.data.as_deref())?;
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Compute { path, t } => {
            let (name, text) = read_input(path.as_deref())?;
            let d = parse_input(&name, &text)?;
            let report = lib.invariants.report(&d, *t)?;
            let out = if json {
                pretty(&serde_json::to_value(&report).expect("report serializes"))
            } else {
                report_text(&report)
            };
            Ok((out, 0))
        }
        Command::Verify { seed, trials } => {
            let config = VerifyConfig {
                seed: *seed,
                trials: *trials as usize,
            };
            let summary = harness::verify(&lib.invariants, &lib.moves, &config);
            let out = if json {
                pretty(&summary_json(&summary))
            } else {
                summary.to_string()
            };
            Ok((out, if summary.passed() { 0 } else { 3 }))
        }
        Command::Tables => {
            let report = tables::regenerate(&lib.invariants, &lib.data)?;
            let out = if json {
                pretty(&tables_json(&report))
            } else {
                report.to_string()
            };
            Ok((out, if report.matches() { 0 } else { 4 }))
        }
        Command::Walk { path, seed, steps } => {
            let start = match path {
                Some(p) => parse_input(&p.display().to_string(), &read(p)?)?,
                None => GaussDiagram::unlink(3, false),
            };
            let walk = lib
                .moves
                .random_walk(*seed, *steps, &lib.moves.specs(), &start)
                .map_err(|e| Failure::new(1, e.to_string()))?;
            let mut reports = Vec::new();
            for d in &walk {
                reports.push(lib.invariants.report(d, None)?);
            }
            let out = if json {
                pretty(&Value::Array(
                    walk.iter()
                        .zip(&reports)
                        .enumerate()
                        .map(|(i, (d, r))| json!({"step": i, "diagram": serialize_gauss_code(d), "report": r}))
                        .collect(),
                ))
            } else {
                let mut out = String::new();
                for (i, d) in walk.iter().enumerate() {
                    out.push_str(&format!("# step {i}\n{}\n", serialize_gauss_code(d)));
                }
                let unchanged = reports.iter().all(|r| *r == reports[0]);
                out.push_str(&format!(
                    "invariants unchanged along the walk: {unchanged}\n"
                ));
                out
            };
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
