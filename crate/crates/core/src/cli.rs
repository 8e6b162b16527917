//! Command-line front end. Every subcommand prints one JSON [`RunReport`]
//! on stdout and diagnostics on stderr. Exit status: 0 pass, 1 fail, 2
//! input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::constructions::{check_construction, construction_suite, ConstructionId, ConstructionSpec};
use crate::error::{Error, Result};
use crate::graph::ColoredDigraph;
use crate::localbounds::{self, BoundStatus, CatalogueId};
use crate::optcheck;
use crate::patterns::{find_rainbow, TrianglePattern};
use crate::search::{self, Budget, GraphClass, Objective, SearchProblem};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Tolerances for the closing-system scan.
pub const SCAN_SLACK_TOLERANCE: f64 = 1e-9;
pub const SCAN_ARGMAX_TOLERANCE: f64 = 1e-4;

/// Directory holding the shipped catalogue files.
pub fn default_catalogue_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("catalogues")
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: String,
    pub results: Value,
    pub pass: bool,
    pub wall_time_ms: u128,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Parser)]
#[command(name = "rtlab", version, about = "Rainbow triangle problems for colored digraphs")]
pub struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, env = "RTLAB_JOBS", global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Look for a rainbow triangle in a graph file.
    Detect {
        graph: PathBuf,
        #[arg(long, default_value = "directed")]
        pattern: TrianglePattern,
    },
    /// Generate an extremal construction.
    Construct {
        id: String,
        n: usize,
        c: Option<usize>,
        /// Write the graph here instead of embedding it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact extremal value for small n.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, default_value = "directed")]
        pattern: TrianglePattern,
        #[arg(long, default_value = "digraph")]
        class: GraphClass,
        #[arg(long, default_value = "max-total")]
        objective: Objective,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Local edge-count scenarios.
    Scenario {
        #[command(subcommand)]
        action: ScenarioCommand,
    },
    /// Bipartite Mantel-type oracle; without sizes, every a + b <= 7.
    Lemma21 {
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Scan the closing constraint system.
    Optscan {
        #[arg(long, default_value_t = 0.002)]
        step: f64,
        #[arg(long, default_value_t = 200)]
        iters: usize,
    },
    /// Exact threshold constants.
    Thresholds,
    /// Every check in one run.
    VerifyAll {
        #[arg(long)]
        catalogue_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScenarioCommand {
    /// Evaluate a catalogue file.
    Run { file: PathBuf },
    /// Evaluate the shipped 10x10 table catalogue.
    VerifyTable {
        #[arg(long)]
        catalogue_dir: Option<PathBuf>,
    },
    /// Write the built-in catalogues as JSON files.
    Export {
        #[arg(long)]
        out_dir: PathBuf,
    },
}

struct Outcome {
    digest_input: Vec<u8>,
    results: Value,
    pass: bool,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payloads serialize")
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn detect(path: &Path, pattern: TrianglePattern) -> Result<Outcome> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let g = ColoredDigraph::from_json(&text)?;
    let witness = find_rainbow(&g, pattern);
    Ok(Outcome {
        digest_input: bytes,
        pass: witness.is_none(),
        results: json!({
            "pattern": pattern,
            "n": g.n(),
            "c": g.c(),
            "graph_digest": sha256_hex(g.to_json().as_bytes()),
            "witness": witness,
        }),
    })
}

fn construct(id: &str, n: usize, c: Option<usize>, out: Option<&Path>) -> Result<Outcome> {
    let id: ConstructionId = id.parse()?;
    let spec = ConstructionSpec::new(id, n, c)?;
    let check = check_construction(&spec)?;
    let g = spec.build()?;
    let text = g.to_json();
    let mut results = json!({
        "spec": spec,
        "counts": check.counts,
        "expected": check.expected,
        "counts_match": check.counts_match,
        "pattern_free": check.pattern_free,
        "oriented": check.oriented,
        "graph_digest": sha256_hex(text.as_bytes()),
    });
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            results["out"] = json!(path.display().to_string());
        }
        None => results["graph"] = to_value(&g),
    }
    Ok(Outcome {
        digest_input: format!("{id} {n} {}", spec.c).into_bytes(),
        pass: check.passes(),
        results,
    })
}

fn run_search(p: SearchProblem, max_nodes: Option<u64>) -> Result<Outcome> {
    let budget = max_nodes.map(Budget::nodes).unwrap_or_default();
    let r = search::solve(&p, budget)?;
    Ok(Outcome {
        digest_input: p.to_string().into_bytes(),
        pass: r.exhaustive,
        results: to_value(&r),
    })
}

fn entries_report(results: &[localbounds::BoundEntry]) -> (Value, bool, Vec<String>) {
    let failing: Vec<String> = results
        .iter()
        .filter(|e| matches!(e.status, BoundStatus::Violated | BoundStatus::Infeasible))
        .map(|e| e.id.clone())
        .collect();
    let count = |s: BoundStatus| results.iter().filter(|e| e.status == s).count();
    let value = json!({
        "entries": results.len(),
        "tight": count(BoundStatus::Tight),
        "verified": count(BoundStatus::Verified),
        "violated": count(BoundStatus::Violated),
        "infeasible": count(BoundStatus::Infeasible),
        "failing": failing,
        "results": results,
    });
    (value, failing.is_empty(), failing)
}

fn run_catalogue_file(path: &Path) -> Result<(Vec<u8>, Value, bool)> {
    let bytes = read(path)?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let scenarios = localbounds::parse_catalogue(&text)?;
    let results = localbounds::run_catalogue(&scenarios)?;
    let (value, pass, failing) = entries_report(&results);
    for id in &failing {
        eprintln!("{}: bound not reproduced: {id}", path.display());
    }
    Ok((bytes, value, pass))
}

fn scenario_file(path: &Path) -> Result<Outcome> {
    let (bytes, results, pass) = run_catalogue_file(path)?;
    Ok(Outcome {
        digest_input: bytes,
        results,
        pass,
    })
}

fn export(dir: &Path) -> Result<Outcome> {
    fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for id in CatalogueId::ALL {
        let path = dir.join(id.file_name());
        let text = localbounds::catalogue_to_json(&localbounds::builtin_catalogue(id));
        fs::write(&path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        written.push(path.display().to_string());
    }
    Ok(Outcome {
        digest_input: dir.display().to_string().into_bytes(),
        results: json!({ "written": written }),
        pass: true,
    })
}

fn lemma21(a: Option<usize>, b: Option<usize>) -> Result<Outcome> {
    let rows = match (a, b) {
        (Some(a), Some(b)) => {
            let max_edges = optcheck::lemma21_oracle(a, b)?;
            let bound = optcheck::lemma21_bound(a, b);
            vec![optcheck::Lemma21Row {
                a,
                b,
                max_edges,
                bound,
                holds: max_edges <= bound,
            }]
        }
        (None, None) => optcheck::lemma21_grid(7)?,
        _ => return Err(Error::InvalidParameter("give both --a and --b, or neither".into())),
    };
    Ok(Outcome {
        digest_input: format!("{a:?} {b:?}").into_bytes(),
        pass: rows.iter().all(|r| r.holds),
        results: to_value(&rows),
    })
}

fn scan_passes(r: &optcheck::ScanReport) -> bool {
    r.max_slack <= SCAN_SLACK_TOLERANCE && r.distance_to_expected <= SCAN_ARGMAX_TOLERANCE
}

fn optscan(step: f64, iters: usize) -> Result<Outcome> {
    let r = optcheck::scan_constraint_system(step, iters)?;
    Ok(Outcome {
        digest_input: format!("{step} {iters}").into_bytes(),
        pass: scan_passes(&r),
        results: to_value(&r),
    })
}

fn thresholds() -> Outcome {
    let table = optcheck::thresholds();
    let identities = optcheck::threshold_identities();
    Outcome {
        digest_input: Vec::new(),
        pass: identities.iter().all(|i| i.holds),
        results: json!({ "constants": table, "identities": identities }),
    }
}

fn verify_all(dir: &Path) -> Result<Outcome> {
    let mut digest_input = Vec::new();
    let mut sections = serde_json::Map::new();
    let mut pass = true;
    for id in CatalogueId::ALL {
        let (bytes, mut value, ok) = run_catalogue_file(&dir.join(id.file_name()))?;
        digest_input.extend(bytes);
        // keep the aggregate report small
        value.as_object_mut().expect("object").remove("results");
        value["pass"] = json!(ok);
        sections.insert(id.name().to_string(), value);
        pass &= ok;
    }

    let rows = optcheck::lemma21_grid(7)?;
    let ok = rows.iter().all(|r| r.holds);
    sections.insert("lemma21".into(), json!({ "pass": ok, "rows": rows }));
    pass &= ok;

    let scan = optcheck::scan_constraint_system(0.002, 200)?;
    let ok = scan_passes(&scan);
    sections.insert("optscan".into(), json!({ "pass": ok, "report": scan }));
    pass &= ok;

    let suite = construction_suite(3..=30)?;
    let failing: Vec<String> = suite
        .iter()
        .filter(|c| !c.passes())
        .map(|c| format!("{} n={} c={}", c.spec.id, c.spec.n, c.spec.c))
        .collect();
    for f in &failing {
        eprintln!("construction check failed: {f}");
    }
    let ok = failing.is_empty();
    sections.insert(
        "constructions".into(),
        json!({ "pass": ok, "checked": suite.len(), "failing": failing }),
    );
    pass &= ok;

    let th = thresholds();
    sections.insert(
        "thresholds".into(),
        json!({ "pass": th.pass, "identities": th.results["identities"] }),
    );
    pass &= th.pass;

    Ok(Outcome {
        digest_input,
        results: Value::Object(sections),
        pass,
    })
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Detect { graph, pattern } => detect(graph, *pattern),
        Command::Construct { id, n, c, out } => construct(id, *n, *c, out.as_deref()),
        Command::Search {
            n,
            c,
            pattern,
            class,
            objective,
            max_nodes,
        } => run_search(SearchProblem::new(*n, *c, *pattern, *class, *objective), *max_nodes),
        Command::Scenario { action } => match action {
            ScenarioCommand::Run { file } => scenario_file(file),
            ScenarioCommand::VerifyTable { catalogue_dir } => {
                let dir = catalogue_dir.clone().unwrap_or_else(default_catalogue_dir);
                scenario_file(&dir.join(CatalogueId::Table.file_name()))
            }
            ScenarioCommand::Export { out_dir } => export(out_dir),
        },
        Command::Lemma21 { a, b } => lemma21(*a, *b),
        Command::Optscan { step, iters } => optscan(*step, *iters),
        Command::Thresholds => Ok(thresholds()),
        Command::VerifyAll { catalogue_dir } => {
            verify_all(&catalogue_dir.clone().unwrap_or_else(default_catalogue_dir))
        }
    }
}

/// Parses `args` (program name first), runs the command, prints the report
/// and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    if let Some(jobs) = cli.jobs {
        // a pool may already exist when called more than once in-process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok(outcome) => {
            let report = RunReport {
                command: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
                input_digest: sha256_hex(&outcome.digest_input),
                results: outcome.results,
                pass: outcome.pass,
                wall_time_ms: start.elapsed().as_millis(),
            };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            // a closed pipe downstream is not a failure of the run
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if report.pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("rtlab: {e}");
            EXIT_INPUT
        }
    }
}
