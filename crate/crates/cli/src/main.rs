use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use modgraph::convergence::{self, AnalyzeOptions, ConvergenceReport};
use modgraph::graph::{self, Multigraph};
use modgraph::matroid::MAX_SCAN_EDGES;
use modgraph::probe::{self, Method, ProbeConfig};
use modgraph::rational;
use modgraph::selftest::{self, SelftestOptions};
use modgraph::Error;

const SEED_ENV: &str = "MODGRAPH_SEED";

#[derive(Parser)]
#[command(name = "modgraph", version, about = "Convergence thresholds of graph integrals")]
struct Cli {
    /// Output format; JSON by default, a plain table for `selftest`.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Threshold, certificates and optimal contraction for each input graph.
    Analyze(AnalyzeArgs),
    /// Growth of the truncated integral for one graph at one exponent.
    Probe(ProbeArgs),
    /// Stable graphs of a given genus whose threshold reaches a target.
    Search(SearchArgs),
    /// Emits a member of one of the standard families.
    Families(FamilyArgs),
    /// Runs the acceptance checks.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Graph files: JSON, or one `tail head` pair per line.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// Also run the numeric probe at s = c and s = c + 1/2 (cores with at most 6 edges).
    #[arg(long)]
    probe: bool,
    /// Largest bridgeless core to analyze.
    #[arg(long, default_value_t = MAX_SCAN_EDGES as u64, value_parser = clap::value_parser!(u64).range(1..=MAX_SCAN_EDGES as u64))]
    max_edges: u64,
    /// Probe seed; overrides MODGRAPH_SEED.
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo samples per box.
    #[arg(long, default_value_t = probe::DEFAULT_SAMPLES)]
    samples: usize,
    /// Indent a single JSON report.
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    MonteCarlo,
    TensorQuadrature,
}

#[derive(Args)]
struct ProbeArgs {
    path: PathBuf,
    /// Real exponent s > 0.
    #[arg(long)]
    s: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::MonteCarlo)]
    method: MethodArg,
    /// Samples per box (Monte Carlo) or nodes per axis (quadrature; default 32).
    #[arg(long)]
    samples: Option<usize>,
    /// Overrides MODGRAPH_SEED.
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated values of ln R.
    #[arg(long, value_delimiter = ',', default_values_t = [4.0, 6.0, 8.0, 10.0])]
    log_r: Vec<f64>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    genus: usize,
    #[arg(long)]
    max_edges: usize,
    /// Threshold to reach, as `p`, `p/q` or a decimal.
    #[arg(long, value_parser = parse_rational)]
    target: rational::Rational,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FamilyArgs {
    /// The n-cycle.
    #[arg(long)]
    ngon: Option<usize>,
    /// The 2n-gon with every other side doubled.
    #[arg(long)]
    doubled: Option<usize>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Skip the probe criterion.
    #[arg(long)]
    quick: bool,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn parse_rational(s: &str) -> Result<rational::Rational, String> {
    rational::parse(s).ok_or_else(|| format!("not a rational number: {s}"))
}

/// Error with the exit code it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }

    fn from_lib(context: &str, e: Error) -> Self {
        let code = match e {
            Error::TheoremViolation(_) | Error::Internal(_) => 2,
            _ => 1,
        };
        let msg = match &e {
            Error::Parse { line: Some(l), msg } => format!("{context}:{l}: {msg}"),
            _ => format!("{context}: {e}"),
        };
        Failure { code, msg }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.format.unwrap_or(Format::Json);
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a, format),
        Command::Probe(a) => run_probe(a, format),
        Command::Search(a) => search(a, format),
        Command::Families(a) => families(a, format),
        Command::Selftest(a) => run_selftest(a, cli.format),
    };
    match result {
        Ok((out, code)) => match emit(&out, cli.output.as_deref()) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

/// Writes the whole output at once; files go through a temporary and a rename
/// so a reader never sees a partial document.
fn emit(out: &str, path: Option<&Path>) -> std::io::Result<()> {
    match path {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.as_bytes())?;
            stdout.flush()
        }
        Some(p) => {
            let mut tmp = p.as_os_str().to_owned();
            tmp.push(".partial");
            fs::write(&tmp, out)?;
            fs::rename(&tmp, p)
        }
    }
}

fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    let ctx = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{ctx}: {e}")))?;
    graph::parse_graph(&text).map_err(|e| Failure::from_lib(&ctx, e))
}

fn seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{SEED_ENV} is not an unsigned integer: {v:?}"))),
        Err(_) => Ok(probe::DEFAULT_SEED),
    }
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
}

fn analyze(a: &AnalyzeArgs, format: Format) -> Outcome {
    let opts = AnalyzeOptions {
        probe: a.probe,
        seed: seed(a.seed)?,
        samples: a.samples,
        max_edges: a.max_edges as usize,
    };
    if a.probe && a.samples < probe::MIN_MC_SAMPLES {
        return Err(Failure::usage(format!("--samples must be at least {}", probe::MIN_MC_SAMPLES)));
    }
    let graphs = a.paths.iter().map(|p| read_graph(p)).collect::<Result<Vec<_>, _>>()?;
    let reports: Vec<ConvergenceReport> = graphs
        .iter()
        .zip(&a.paths)
        .map(|(g, p)| convergence::analyze(g, &opts).map_err(|e| Failure::from_lib(&p.display().to_string(), e)))
        .collect::<Result<_, _>>()?;
    let out = match format {
        Format::Json if reports.len() == 1 && a.pretty => reports[0].to_json_pretty() + "\n",
        Format::Json => reports.iter().map(|r| r.to_json() + "\n").collect(),
        Format::Csv => {
            let mut header = vec!["path"];
            header.extend(ConvergenceReport::CSV_HEADER);
            csv_string(
                &header,
                reports.iter().zip(&a.paths).map(|(r, p)| {
                    let mut row = vec![p.display().to_string()];
                    row.extend(r.csv_row());
                    row
                }),
            )
        }
    };
    Ok((out, 0))
}

fn run_probe(a: &ProbeArgs, format: Format) -> Outcome {
    let ctx = a.path.display().to_string();
    let g = read_graph(&a.path)?;
    let core = convergence::bridgeless_core(&g).map_err(|e| Failure::from_lib(&ctx, e))?;
    let method = match a.method {
        MethodArg::MonteCarlo => Method::MonteCarlo,
        MethodArg::TensorQuadrature => Method::TensorQuadrature,
    };
    let mut cfg = ProbeConfig::new(a.s);
    cfg.method = method;
    cfg.seed = seed(a.seed)?;
    cfg.r_grid = a.log_r.iter().map(|k| k.exp()).collect();
    cfg.samples = a.samples.unwrap_or(match method {
        Method::MonteCarlo => probe::DEFAULT_SAMPLES,
        Method::TensorQuadrature => probe::QUADRATURE_NODES,
    });
    let v = probe::truncated_j(&core.graph, &cfg).map_err(|e| Failure::from_lib(&ctx, e))?;
    let out = match format {
        Format::Csv => v.to_csv(),
        Format::Json => {
            json!({
                "schema": "1",
                "bridges_contracted": graph::bridges(&g),
                "note": "real s only: |psi^s| = psi^Re(s)",
                "probe": v,
            })
            .to_string()
                + "\n"
        }
    };
    Ok((out, 0))
}

fn search(a: &SearchArgs, format: Format) -> Outcome {
    let hits = convergence::search_divergent(a.genus, a.max_edges, &a.target)
        .map_err(|e| Failure::from_lib("search", e))?;
    let out = match format {
        Format::Json => hits
            .iter()
            .map(|h| {
                json!({
                    "c": h.c.to_string(),
                    "c_float": rational::to_f64(&h.c),
                    "v": h.graph.num_vertices(),
                    "e": h.graph.num_edges(),
                    "b": graph::betti(&h.graph),
                    "graph": h.graph.to_json_value(),
                    "fingerprint": h.fingerprint,
                })
                .to_string()
                    + "\n"
            })
            .collect(),
        Format::Csv => csv_string(
            &["c", "c_decimal", "v", "e", "spanning_trees", "edges"],
            hits.iter().map(|h| {
                vec![
                    h.c.to_string(),
                    rational::to_decimal(&h.c, 6),
                    h.graph.num_vertices().to_string(),
                    h.graph.num_edges().to_string(),
                    h.fingerprint.spanning_trees.to_string(),
                    h.graph
                        .edges()
                        .iter()
                        .map(|e| format!("{}-{}", e.tail, e.head))
                        .collect::<Vec<_>>()
                        .join(" "),
                ]
            }),
        ),
    };
    if hits.is_empty() {
        eprintln!("no graph of genus {} with at most {} edges reaches c >= {}", a.genus, a.max_edges, a.target);
    }
    Ok((out, if hits.is_empty() { 3 } else { 0 }))
}

fn families(a: &FamilyArgs, format: Format) -> Outcome {
    let g = match (a.ngon, a.doubled) {
        (Some(n), _) => convergence::make_ngon(n),
        (_, Some(n)) => convergence::make_doubled_2ngon(n),
        _ => unreachable!("clap enforces exactly one family"),
    }
    .map_err(|e| Failure::from_lib("families", e))?;
    let out = match format {
        Format::Json => g.to_json() + "\n",
        Format::Csv => csv_string(
            &["tail", "head"],
            g.edges().iter().map(|e| vec![e.tail.to_string(), e.head.to_string()]),
        ),
    };
    Ok((out, 0))
}

fn run_selftest(a: &SelftestArgs, format: Option<Format>) -> Outcome {
    let opts = SelftestOptions {
        quick: a.quick,
        inject_fault: a.inject_fault,
    };
    let outcomes = selftest::run(&opts);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let out = match format {
        None => {
            let mut table: String = outcomes.iter().map(|o| o.line() + "\n").collect();
            table.push_str(&format!("{} of {} criteria failed\n", failed, outcomes.len()));
            table
        }
        Some(Format::Json) => outcomes
            .iter()
            .map(|o| {
                json!({
                    "id": o.id,
                    "name": o.name,
                    "passed": o.passed,
                    "skipped": o.skipped,
                    "seconds": o.elapsed.as_secs_f64(),
                    "detail": o.detail,
                })
                .to_string()
                    + "\n"
            })
            .collect(),
        Some(Format::Csv) => csv_string(
            &["id", "name", "status", "seconds", "detail"],
            outcomes.iter().map(|o| {
                let status = if o.skipped { "skip" } else if o.passed { "pass" } else { "fail" };
                vec![
                    o.id.to_string(),
                    o.name.to_string(),
                    status.to_string(),
                    format!("{:.3}", o.elapsed.as_secs_f64()),
                    o.detail.clone(),
                ]
            }),
        ),
    };
    Ok((out, if failed > 0 { 2 } else { 0 }))
}
