//! `perron-bounds`: bound reports, verification sweeps and the example-table
//! cross-check.
//!
//! Exit codes: 0 verified, 1 input error, 2 bound violation, 3 solver
//! non-convergence.

mod render;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use perron_bounds::enumerate::DEFAULT_ENUMERATION_CAP;
use perron_bounds::io::{parse_edge_list, parse_graph6_lines};
use perron_bounds::sweep::{sweep_exhaustive_with_cap, SweepSummary};
use perron_bounds::{analyze, check_published_table, sweep_graphs, sweep_random, verify_report, Error, Graph, SolverConfig};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(name = "perron-bounds", version, about = "Principal eigenvector entry bounds for connected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-vertex bound table for each graph in the input.
    Report(ReportArgs),
    /// Machine-check every bound over a stream of graphs.
    Verify(VerifyArgs),
    /// Consistency check of the published nine-vertex example table.
    PaperCheck {
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    /// Header `n m`, then `m` lines `u v` with 0-based endpoints.
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Output {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct SolverArgs {
    /// Allowed inequality violation when verifying bounds.
    #[arg(long = "tol", default_value_t = 1e-9)]
    verify_slack: f64,
    /// Power-iteration stopping tolerance on ‖Ax − ρx‖∞.
    #[arg(long, default_value_t = 1e-12)]
    residual_tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iterations: usize,
    /// Fail instead of falling back to the dense Jacobi solver.
    #[arg(long)]
    no_fallback: bool,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            residual_tol: self.residual_tol,
            max_iterations: self.max_iterations,
            verify_slack: self.verify_slack,
            oracle_fallback: !self.no_fallback,
        }
    }
}

#[derive(Args)]
struct ReportArgs {
    /// Input file, or `-` for standard input.
    path: PathBuf,
    /// Input format. Inferred from the extension (`.g6`, `.graph6`) or the
    /// content when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "random", "graph6"])))]
struct VerifyArgs {
    /// Every labeled connected graph on `--n` vertices.
    #[arg(long, requires = "n")]
    exhaustive: bool,
    /// `--count` connected G(n, p) samples.
    #[arg(long, requires_all = ["n", "p", "count"])]
    random: bool,
    /// Graphs read from a graph6 file (`-` for standard input).
    #[arg(long, value_name = "PATH")]
    graph6: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    count: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest order accepted by `--exhaustive`.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(flatten)]
    solver: SolverArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Report(args) => run_report(&args),
        Command::Verify(args) => run_verify(&args),
        Command::PaperCheck { output } => run_paper_check(output),
    };
    ExitCode::from(code)
}

fn exit_for(error: &Error) -> u8 {
    match error {
        Error::NotConverged { .. } => EXIT_SOLVER,
        _ => EXIT_INPUT,
    }
}

fn fail(context: &str, error: &Error) -> u8 {
    eprintln!("error: {context}: {error}");
    exit_for(error)
}

fn read_input(path: &Path) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path)
    }
}

fn detect_format(path: &Path, text: &str) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6" | "graph6") => return Format::Graph6,
        Some("txt" | "edges" | "edgelist") => return Format::Edgelist,
        _ => {}
    }
    // graph6 records never contain whitespace; an edge-list header always does
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.split_whitespace().count() == 2 {
        Format::Edgelist
    } else {
        Format::Graph6
    }
}

fn load_graphs(path: &Path, format: Option<Format>) -> Result<Vec<Graph>, u8> {
    let text = read_input(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })?;
    match format.unwrap_or_else(|| detect_format(path, &text)) {
        Format::Graph6 => {
            let graphs = parse_graph6_lines(&text)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| fail(&path.display().to_string(), &e))?;
            if graphs.is_empty() {
                eprintln!("error: {}: no graphs in input", path.display());
                return Err(EXIT_INPUT);
            }
            Ok(graphs)
        }
        Format::Edgelist => {
            let parsed = parse_edge_list(&text).map_err(|e| fail(&path.display().to_string(), &e))?;
            if parsed.duplicate_edges > 0 {
                eprintln!("warning: {} duplicate edge line(s) collapsed", parsed.duplicate_edges);
            }
            Ok(vec![parsed.graph])
        }
    }
}

fn run_report(args: &ReportArgs) -> u8 {
    let cfg = args.solver.config();
    if let Err(e) = cfg.validate() {
        return fail("invalid solver options", &e);
    }
    let graphs = match load_graphs(&args.path, args.format) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut code = EXIT_OK;
    let mut reports = Vec::new();
    for g in &graphs {
        match analyze(g, &cfg) {
            Ok(report) => {
                let violations = verify_report(&report, &cfg);
                if !violations.is_empty() {
                    code = code.max(EXIT_VIOLATION);
                }
                reports.push((report, violations));
            }
            Err(e) => {
                let name = perron_bounds::encode_graph6(g).unwrap_or_default();
                code = code.max(fail(&format!("graph {name}"), &e));
            }
        }
    }
    print!("{}", render::reports(&reports, &cfg, args.output));
    code
}

fn run_verify(args: &VerifyArgs) -> u8 {
    let cfg = args.solver.config();
    if let Err(e) = cfg.validate() {
        return fail("invalid solver options", &e);
    }
    let (mode, result): (String, Result<SweepSummary, Error>) = if args.exhaustive {
        let n = args.n.expect("clap enforces --n");
        (
            format!("exhaustive n={n}"),
            sweep_exhaustive_with_cap(n, args.cap, &cfg).map_err(|e| match e {
                Error::EnumerationCap { .. } => Error::InvalidInput(format!(
                    "{e} through `verify --graph6 -`, or raise --cap (slow)"
                )),
                other => other,
            }),
        )
    } else if args.random {
        let (n, p, count) = (
            args.n.expect("clap enforces --n"),
            args.p.expect("clap enforces --p"),
            args.count.expect("clap enforces --count"),
        );
        (
            format!("random n={n} p={p} count={count} seed={}", args.seed),
            sweep_random(n, p, count, args.seed, &cfg),
        )
    } else {
        let path = args.graph6.as_deref().expect("clap enforces a mode");
        let graphs = match load_graphs(path, Some(Format::Graph6)) {
            Ok(graphs) => graphs,
            Err(code) => return code,
        };
        if let Some((line, g)) = graphs.iter().enumerate().find(|(_, g)| !g.is_connected()) {
            let e = Error::Disconnected {
                components: g.connected_components().components,
            };
            return fail(&format!("{} record {}", path.display(), line + 1), &e);
        }
        (format!("graph6 {}", path.display()), Ok(sweep_graphs(&graphs, &cfg)))
    };

    let summary = match result {
        Ok(s) => s,
        Err(e) => return fail("verify", &e),
    };
    print!("{}", render::sweep(&mode, &summary, args.output));
    if summary.bound_failures() > 0 {
        EXIT_VIOLATION
    } else if summary.solver_failures > 0 {
        EXIT_SOLVER
    } else {
        EXIT_OK
    }
}

fn run_paper_check(output: Output) -> u8 {
    let check = check_published_table();
    print!("{}", render::table_check(&check, output));
    if check.passes() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}
