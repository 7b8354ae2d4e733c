use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use topocert::connectivity::Separator;
use topocert::extractor::{audit_tables, extract, ExtractionOutcome};
use topocert::generator::{generate, FamilySpec};
use topocert::graph::Graph;
use topocert::io::{parse_edge_list, parse_graph6, write_graph6};
use topocert::subdiv::{
    find_subdivision, verify_embedding, Embedding, Pattern, SearchBudget, SearchOptions, SearchOutcome,
};

#[derive(Parser)]
#[command(name = "topocert", version, about = "Certified topological containment for graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search each input graph for a subdivision of a pattern.
    Detect {
        #[arg(long, value_enum)]
        pattern: PatternArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODES)]
        budget: u64,
    },
    /// Find a K5-minus subdivision or a cut of at most three vertices.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODES)]
        budget: u64,
    },
    /// Re-check certificates produced by `detect` or `extract`.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Write graph6 lines for a graph family. Random families use seeds
    /// `seed, seed + 1, ...`; fixed families are repeated.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Rebuild and certify every endpoint-table row and landing class.
    Audit {
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODES)]
        budget: u64,
    },
    /// Run `extract` over a corpus and summarize time, nodes and fallbacks.
    Bench {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    W4,
    K5,
    K5minus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    G6,
    Edges,
}

/// Exit status of a run that got as far as producing JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Positive,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Positive) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<Status, String> {
    match cmd {
        Command::Detect {
            pattern,
            input,
            format,
            budget,
        } => {
            check_budget(budget)?;
            let p = match pattern {
                PatternArg::W4 => Pattern::w4(),
                PatternArg::K5 => Pattern::k5(),
                PatternArg::K5minus => Pattern::k5_minus(),
            };
            let graphs = load(&input, format)?;
            let rows: Vec<(Status, Value)> = graphs.par_iter().map(|g| detect_one(g, &p, budget)).collect();
            Ok(emit(rows))
        }
        Command::Extract { input, trace, budget } => {
            check_budget(budget)?;
            let graphs = load(&input, None)?;
            let rows: Vec<(Status, Value)> = graphs.par_iter().map(|g| extract_one(g, budget, trace)).collect();
            Ok(emit(rows))
        }
        Command::Verify { input, cert } => {
            let graphs = load(&input, None)?;
            let text = fs::read_to_string(&cert).map_err(|e| format!("{}: {e}", cert.display()))?;
            let certs: Vec<Value> = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| serde_json::from_str(l).map_err(|e| format!("{}: {e}", cert.display())))
                .collect::<Result<_, _>>()?;
            if certs.len() != graphs.len() {
                return Err(format!("{} graphs but {} certificates", graphs.len(), certs.len()));
            }
            let rows = graphs.iter().zip(&certs).map(|(g, c)| verify_one(g, c)).collect();
            Ok(emit(rows))
        }
        Command::Gen { family, seed, count } => {
            let spec: FamilySpec = family.parse().map_err(|e| format!("{e}"))?;
            for i in 0..count {
                let spec = match &spec {
                    FamilySpec::Random { n, p, .. } => FamilySpec::Random {
                        n: *n,
                        p: *p,
                        seed: seed.wrapping_add(i as u64),
                    },
                    other => other.clone(),
                };
                let g = generate(&spec).map_err(|e| e.to_string())?;
                println!("{}", write_graph6(&g, false));
            }
            Ok(Status::Positive)
        }
        Command::Audit { budget } => {
            check_budget(budget)?;
            let report = audit_tables(&mut SearchBudget::new(budget));
            let ok = report.all_pass();
            println!("{}", json!({ "rows": report.rows, "all_pass": ok }));
            Ok(if ok { Status::Positive } else { Status::Negative })
        }
        Command::Bench { input } => {
            let graphs = load(&input, None)?;
            let start = Instant::now();
            let runs: Vec<(f64, u64, &'static str, bool)> = graphs
                .par_iter()
                .map(|g| {
                    let t = Instant::now();
                    let mut budget = SearchBudget::default();
                    let x = extract(g, &mut budget);
                    let kind = match x.outcome {
                        ExtractionOutcome::Found(_) => "found",
                        ExtractionOutcome::NotFourConnected(_) => "not_four_connected",
                        ExtractionOutcome::GaveUp { .. } => "gave_up",
                    };
                    (t.elapsed().as_secs_f64(), budget.used, kind, x.used_fallback())
                })
                .collect();
            let count = |k: &str| runs.iter().filter(|r| r.2 == k).count();
            let fallbacks = runs.iter().filter(|r| r.3).count();
            println!(
                "{}",
                json!({
                    "graphs": runs.len(),
                    "found": count("found"),
                    "not_four_connected": count("not_four_connected"),
                    "gave_up": count("gave_up"),
                    "fallback_runs": fallbacks,
                    "fallback_rate": if runs.is_empty() { 0.0 } else { fallbacks as f64 / runs.len() as f64 },
                    "nodes_used": runs.iter().map(|r| r.1).sum::<u64>(),
                    "max_graph_seconds": runs.iter().map(|r| r.0).fold(0.0, f64::max),
                    "wall_seconds": start.elapsed().as_secs_f64(),
                })
            );
            Ok(Status::Positive)
        }
    }
}

fn check_budget(budget: u64) -> Result<(), String> {
    if budget == 0 {
        Err("--budget must be positive".into())
    } else {
        Ok(())
    }
}

/// Prints one JSON object per line and folds the statuses.
fn emit(rows: Vec<(Status, Value)>) -> Status {
    let mut worst = Status::Positive;
    for (s, v) in rows {
        println!("{v}");
        worst = worst.max(s);
    }
    worst
}

fn load(path: &Path, format: Option<Format>) -> Result<Vec<Graph>, String> {
    let format = match format {
        Some(f) => f,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("g6") => Format::G6,
            Some("edges") => Format::Edges,
            _ => return Err(format!("{}: cannot tell the format; use --format", path.display())),
        },
    };
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let fail = |e: topocert::io::FormatError| format!("{}: {e}", path.display());
    match format {
        Format::Edges => Ok(vec![parse_edge_list(&text).map_err(fail)?]),
        Format::G6 => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| parse_graph6(l.trim()).map_err(fail))
            .collect(),
    }
}

fn detect_one(g: &Graph, p: &Pattern, limit: u64) -> (Status, Value) {
    let mut budget = SearchBudget::new(limit);
    match find_subdivision(g, p, &mut budget, &SearchOptions::default()) {
        SearchOutcome::Found(e) => (
            Status::Positive,
            json!({ "contains": true, "certificate": e, "nodes_used": budget.used }),
        ),
        SearchOutcome::NotFound => (
            Status::Negative,
            json!({ "contains": false, "nodes_used": budget.used }),
        ),
        SearchOutcome::BudgetExceeded => (
            Status::Negative,
            json!({ "contains": null, "budget_exceeded": true, "nodes_used": budget.used }),
        ),
    }
}

fn extract_one(g: &Graph, limit: u64, trace: bool) -> (Status, Value) {
    let mut budget = SearchBudget::new(limit);
    let x = extract(g, &mut budget);
    let (status, mut v) = match &x.outcome {
        ExtractionOutcome::Found(e) => (Status::Positive, json!({ "outcome": "found", "certificate": e })),
        ExtractionOutcome::NotFourConnected(w) => {
            let mut v = json!({ "outcome": "not_four_connected", "witness": w });
            if let Some(cut) = w.cut() {
                v["cut"] = json!(cut);
            }
            (Status::Negative, v)
        }
        ExtractionOutcome::GaveUp { reason, nodes_used } => (
            Status::Negative,
            json!({ "outcome": "gave_up", "reason": reason, "nodes_used": nodes_used }),
        ),
    };
    v["used_fallback"] = json!(x.used_fallback());
    if trace {
        v["trace"] = json!(x.trace);
    }
    (status, v)
}

fn verify_one(g: &Graph, cert: &Value) -> (Status, Value) {
    let verdict = |ok: bool, what: &str, problems: Value| {
        let s = if ok { Status::Positive } else { Status::Negative };
        (s, json!({ "valid": ok, "kind": what, "problems": problems }))
    };
    if let Some(c) = cert.get("certificate").filter(|c| !c.is_null()) {
        return match serde_json::from_value::<Embedding>(c.clone()) {
            Ok(e) => match verify_embedding(g, &e) {
                Ok(()) => verdict(true, "subdivision", json!([])),
                Err(vs) => verdict(
                    false,
                    "subdivision",
                    json!(vs.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
                ),
            },
            Err(err) => verdict(false, "subdivision", json!([err.to_string()])),
        };
    }
    if let Some(c) = cert.get("cut").filter(|c| !c.is_null()) {
        return match serde_json::from_value::<Vec<usize>>(c.clone()) {
            Ok(cut) if cut.iter().any(|&v| v >= g.n()) => verdict(false, "cut", json!(["cut vertex out of range"])),
            Ok(cut) => match Separator::from_cut(g, &cut) {
                Some(_) => verdict(true, "cut", json!([])),
                None => verdict(false, "cut", json!(["removing the cut leaves the graph connected"])),
            },
            Err(err) => verdict(false, "cut", json!([err.to_string()])),
        };
    }
    // a graph too small to have a cut is its own witness
    if let Some(w) = cert.get("witness") {
        if w.get("kind").and_then(Value::as_str) == Some("too_small") {
            let ok = g.n() <= 4;
            return verdict(
                ok,
                "too_small",
                if ok {
                    json!([])
                } else {
                    json!(["graph has more than four vertices"])
                },
            );
        }
    }
    verdict(false, "none", json!(["no certificate to check"]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_certificates() {
        let c5 = Graph::cycle(5);
        assert_eq!(verify_one(&c5, &json!({ "cut": [1, 4] })).0, Status::Positive);
        assert_eq!(verify_one(&c5, &json!({ "cut": [1, 2] })).0, Status::Negative);
        assert_eq!(verify_one(&c5, &json!({ "cut": [9] })).0, Status::Negative);
        let small = json!({ "witness": { "kind": "too_small", "n": 4 } });
        assert_eq!(verify_one(&Graph::complete(4), &small).0, Status::Positive);
        assert_eq!(verify_one(&c5, &small).0, Status::Negative);
        assert_eq!(verify_one(&c5, &json!({ "contains": false })).0, Status::Negative);
    }

    #[test]
    fn format_follows_extension() {
        let err = load(Path::new("graphs.txt"), None).unwrap_err();
        assert!(err.contains("--format"));
    }

    #[test]
    fn worst_status_wins() {
        assert_eq!(emit(vec![]), Status::Positive);
        assert_eq!(
            emit(vec![(Status::Positive, json!(1)), (Status::Negative, json!(2))]),
            Status::Negative
        );
    }
}
