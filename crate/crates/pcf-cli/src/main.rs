//! Command-line front end: solve, verify, oracle, gen, and bench over the
//! instance and solution formats of the library.
//!
//! Exit codes: 0 success, 1 failed verification or failed ratio
//! certification, 2 parse/flag errors, 3 algorithm precondition violations
//! (including oracle caps).

mod bench;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcf::graph::{self, ColoredMultigraph, EdgeSubset};
use pcf::maxpt;
use pcf::ratio::Ratio;
use pcf::solvers::{self, SolveReport};
use pcf::{instances, oracle};
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pcf",
    about = "Maximum properly colored forests and trees",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the solution with upper bounds.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Verify(VerifyArgs),
    /// Exact brute-force optimum (forest, or tree with --tree).
    Oracle(OracleArgs),
    /// Generate instances: random or reduction families.
    Gen(GenArgs),
    /// Seeded benchmark trials with optional ratio certification.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    /// Exact algorithm when applicable, else the best-ratio approximation.
    Auto,
    /// Exact solver for 2-edge-colored complete multigraphs.
    Complete2,
    /// Local-improvement approximation for arbitrary multigraphs.
    General,
    /// Union-of-matchings algorithm for simple graphs.
    Simplek,
    /// Properly colored tree approximation for complete multigraphs.
    Maxpt,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file ('-' for standard input).
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value = "auto")]
    alg: Alg,
    /// Epsilon for --alg maxpt, as a rational like 2 or 5/2.
    #[arg(long, default_value = "2")]
    eps: String,
    /// File listing the V1 vertices of a precomputed maxpt partition.
    #[arg(long)]
    partition: Option<PathBuf>,
    /// Enumeration cap for the brute-force branches of maxpt.
    #[arg(long, default_value_t = 200)]
    cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    solution: String,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: String,
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    cap: usize,
    /// Maximize a properly colored tree instead of a forest.
    #[arg(long)]
    tree: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Random k-edge-colored instance.
    Random,
    /// Linear-forest source doubled into a 2-colored instance with
    /// connector gadgets.
    Lf2pcf,
    /// 2-colored simple source completed into a 3-colored complete graph.
    Pcf3complete,
    /// Digraph source turned into a 2-colored tree instance.
    Lp2maxpt,
    /// Source edges replaced by red/blue parallel pairs.
    Tsp12,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    seed: u64,
    /// Vertex count (of the source graph for reduction families).
    #[arg(long)]
    n: usize,
    /// Edge count (of the source graph for reduction families).
    #[arg(long)]
    m: usize,
    /// Color count (random family only).
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Forbid parallel edges (random family only).
    #[arg(long)]
    simple: bool,
    /// Output file; defaults to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Back-map sidecar file for reduction families; defaults to
    /// "<out>.map" when --out is given.
    #[arg(long)]
    map: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => bench::cmd_bench(args),
    }
}

fn read_input(spec: &str) -> Result<String, String> {
    if spec == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        Ok(buf)
    } else {
        std::fs::read_to_string(spec).map_err(|e| format!("{spec}: {e}"))
    }
}

fn load_instance(spec: &str) -> Result<ColoredMultigraph, String> {
    let text = read_input(spec)?;
    graph::parse_instance(&text).map_err(|e| e.to_string())
}

pub(crate) fn parse_failure(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn precondition_failure(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(3)
}

/// Dispatch rule for --alg auto: the exact algorithm whenever its
/// preconditions hold, otherwise the best-ratio applicable approximation.
pub(crate) fn dispatch_auto(g: &ColoredMultigraph) -> Alg {
    if g.k() == 2 && g.is_complete_multigraph() {
        Alg::Complete2
    } else if g.simple_flag() && g.k() <= 3 {
        Alg::Simplek
    } else {
        Alg::General
    }
}

pub(crate) fn run_pf_alg(
    g: &ColoredMultigraph,
    alg: Alg,
) -> Result<SolveReport, solvers::SolveError> {
    match alg {
        Alg::Complete2 => solvers::solve_complete_2color(g),
        Alg::General => solvers::solve_general(g),
        Alg::Simplek => solvers::solve_union_matchings(g),
        Alg::Auto => run_pf_alg(g, dispatch_auto(g)),
        Alg::Maxpt => unreachable!("maxpt is dispatched separately"),
    }
}

fn cmd_solve(args: SolveArgs) -> ExitCode {
    let g = match load_instance(&args.input) {
        Ok(g) => g,
        Err(e) => return parse_failure(&e),
    };
    let report = if matches!(args.alg, Alg::Maxpt) {
        let eps: Ratio = match args.eps.parse() {
            Ok(r) => r,
            Err(e) => return parse_failure(&format!("--eps: {e}")),
        };
        let result = match &args.partition {
            Some(path) => {
                let v1 = match read_partition(path) {
                    Ok(v) => v,
                    Err(e) => return parse_failure(&e),
                };
                let oracle_impl = maxpt::FixedPartitionOracle { v1, cap: args.cap };
                maxpt::solve_maxpt(&g, eps, &oracle_impl, args.cap)
            }
            None => {
                let oracle_impl = maxpt::BruteForcePartitionOracle {
                    max_n: 9,
                    cap: args.cap,
                };
                maxpt::solve_maxpt(&g, eps, &oracle_impl, args.cap)
            }
        };
        match result {
            Ok(r) => r,
            Err(e) => return precondition_failure(&e.to_string()),
        }
    } else {
        match run_pf_alg(&g, args.alg) {
            Ok(r) => r,
            Err(e) => return precondition_failure(&e.to_string()),
        }
    };
    print!("{}", render_report(&report, args.json));
    ExitCode::SUCCESS
}

fn read_partition(path: &Path) -> Result<Vec<usize>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        out.push(
            tok.parse::<usize>()
                .map_err(|_| format!("bad vertex id: {tok}"))?,
        );
    }
    Ok(out)
}

fn render_report(r: &SolveReport, json: bool) -> String {
    if json {
        let bounds: Vec<String> = r
            .upper_bounds
            .iter()
            .map(|(name, v)| format!("\"{name}\":{v}"))
            .collect();
        let forest: Vec<String> = r.forest.iter().map(|id| id.to_string()).collect();
        format!(
            "{{\"algorithm\":\"{}\",\"size\":{},\"forest\":[{}],\"upper_bounds\":{{{}}},\"iterations\":{}}}\n",
            r.algorithm,
            r.size,
            forest.join(","),
            bounds.join(","),
            r.iterations
        )
    } else {
        let mut out = format!("c alg {}\n", r.algorithm);
        out.push_str(&graph::solution_to_text(&r.forest));
        for (name, v) in &r.upper_bounds {
            out.push_str(&format!("c ub {name} {v}\n"));
        }
        out.push_str(&format!("c iterations {}\n", r.iterations));
        out
    }
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let g = match load_instance(&args.input) {
        Ok(g) => g,
        Err(e) => return parse_failure(&e),
    };
    let sol_text = match read_input(&args.solution) {
        Ok(t) => t,
        Err(e) => return parse_failure(&e),
    };
    let forest: EdgeSubset = match graph::parse_solution(&sol_text) {
        Ok(f) => f,
        Err(e) => return parse_failure(&e.to_string()),
    };
    match g.verify_pc_forest(&forest) {
        Ok(verdict) => {
            println!("{verdict}");
            if verdict.is_valid() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => parse_failure(&e.to_string()),
    }
}

fn cmd_oracle(args: OracleArgs) -> ExitCode {
    let g = match load_instance(&args.input) {
        Ok(g) => g,
        Err(e) => return parse_failure(&e),
    };
    let result = if args.tree {
        oracle::brute_maxpt(&g, args.cap)
    } else {
        oracle::brute_maxpf(&g, args.cap)
    };
    match result {
        Ok(res) => {
            print!("{}", graph::solution_to_text(&res.witness));
            println!("c opt {}", res.optimum);
            ExitCode::SUCCESS
        }
        Err(e) => precondition_failure(&e.to_string()),
    }
}

fn cmd_gen(args: GenArgs) -> ExitCode {
    let (instance_text, map_text): (String, Option<String>) = match args.family {
        Family::Random => {
            match instances::gen_random(args.n, args.m, args.k, args.simple, args.seed) {
                Ok(g) => (g.to_instance_text(), None),
                Err(e) => return parse_failure(&e.to_string()),
            }
        }
        Family::Lf2pcf => {
            let source = match instances::gen_random_uncolored(args.n, args.m, args.seed) {
                Ok(s) => s,
                Err(e) => return parse_failure(&e.to_string()),
            };
            let red = instances::reduce_lf_to_pcf2(&source).expect("generated source is simple");
            (
                red.target.to_instance_text(),
                Some(instances::backmap_text(&red.roles)),
            )
        }
        Family::Pcf3complete => {
            let source = match instances::gen_random(args.n, args.m, 2, true, args.seed) {
                Ok(s) => s,
                Err(e) => return parse_failure(&e.to_string()),
            };
            let red = instances::reduce_pcf2_to_pcf3_complete(&source)
                .expect("generated source is 2-colored simple");
            (
                red.target.to_instance_text(),
                Some(instances::backmap_text(&red.roles)),
            )
        }
        Family::Lp2maxpt => {
            let source = match instances::gen_random_digraph(args.n, args.m, args.seed) {
                Ok(s) => s,
                Err(e) => return parse_failure(&e.to_string()),
            };
            let red =
                instances::reduce_digraph_to_maxpt2(&source).expect("generated source is loopless");
            (
                red.target.to_instance_text(),
                Some(instances::backmap_text(&red.roles)),
            )
        }
        Family::Tsp12 => {
            let source = match instances::gen_random_uncolored(args.n, args.m, args.seed) {
                Ok(s) => s,
                Err(e) => return parse_failure(&e.to_string()),
            };
            let red = instances::gen_tsp12_doubling(&source).expect("generated source is simple");
            (
                red.target.to_instance_text(),
                Some(instances::backmap_text(&red.roles)),
            )
        }
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &instance_text) {
                return parse_failure(&format!("{}: {e}", path.display()));
            }
        }
        None => print!("{instance_text}"),
    }
    if let Some(map) = map_text {
        let map_path = args.map.clone().or_else(|| {
            args.out.as_ref().map(|o| {
                let mut p = o.clone().into_os_string();
                p.push(".map");
                PathBuf::from(p)
            })
        });
        if let Some(path) = map_path {
            if let Err(e) = std::fs::write(&path, &map) {
                return parse_failure(&format!("{}: {e}", path.display()));
            }
        }
    }
    ExitCode::SUCCESS
}
