use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use hybrid_search::bench::{
    cache_dir_from_env, cli_bench, cli_solve, format_rows, parse_suite, Algorithm, Format,
    InstanceSource, RunRequest,
};
use hybrid_search::domains::generate::{generate_instances, GenSpec};
use hybrid_search::oracle::{bfs_solve, DEFAULT_STATE_LIMIT};
use hybrid_search::{Error, Result, StateSpace};

#[derive(Parser)]
#[command(name = "hybrid-search", version, about = "Memory-bounded optimal search: A*, BFIDA* and A*+BFHS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Run a suite file and print a results table.
    Bench(BenchArgs),
    /// Generate seeded instances.
    Gen(GenArgs),
    /// Solve instances with uninformed breadth-first search.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct Common {
    /// Domain of instance files without a `domain:` line.
    #[arg(long)]
    domain: Option<String>,
    /// Heuristic: zero, manhattan, graph, pdb:<vars>, max:<h>+<h>, default.
    #[arg(long, default_value = "default")]
    heuristic: String,
    /// A*-phase stored-node threshold for the hybrid.
    #[arg(long)]
    threshold: Option<u64>,
    /// Stop after generating this many nodes.
    #[arg(long)]
    node_budget: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    #[arg(long, default_value = "table", value_parser = parse_format)]
    format: Format,
    /// Seed for `gen:` instance sources.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print NA instead of wall times (output then depends only on the input).
    #[arg(long)]
    no_time: bool,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file, `figure1`, or `gen:<spec>[#index]`.
    #[arg(long)]
    instance: String,
    /// astar, bfida, hybrid-inf, hybrid-<k>, or hybrid (see --max-calls).
    #[arg(long, default_value = "hybrid")]
    algorithm: String,
    /// BFHS calls per iteration for `--algorithm hybrid`: a number or `inf`.
    #[arg(long)]
    max_calls: Option<String>,
    /// Check BFHS duplicate detection while searching.
    #[arg(long)]
    audit: bool,
    /// Print the solution path.
    #[arg(long)]
    print_path: bool,
    /// Print the hybrid's BFHS call log.
    #[arg(long)]
    print_calls: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct BenchArgs {
    /// Suite file.
    suite: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct GenArgs {
    /// Generator, e.g. `tile:3x3:walk=30`, `hanoi4:discs=5`, `pancake:n=7`.
    spec: String,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write one `<id>.inst` file per instance here instead of to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Instance sources (repeatable).
    #[arg(long, required = true)]
    instance: Vec<String>,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest number of states to store.
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    limit: usize,
    #[arg(long)]
    print_path: bool,
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Bench(a) => bench(a),
        Command::Gen(a) => gen(a),
        Command::Oracle(a) => oracle(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn time_budget(secs: Option<f64>) -> Result<Option<Duration>> {
    secs.map(|s| {
        Duration::try_from_secs_f64(s)
            .ok()
            .filter(|d| !d.is_zero())
            .ok_or_else(|| Error::Argument(format!("bad time budget {s}")))
    })
    .transpose()
}

fn check_budgets(c: &Common) -> Result<()> {
    if c.node_budget == Some(0) || c.threshold == Some(0) {
        return Err(Error::Argument("budgets and thresholds must be positive".into()));
    }
    Ok(())
}

fn solve(a: SolveArgs) -> Result<u8> {
    check_budgets(&a.common)?;
    let mut algorithm: Algorithm = a.algorithm.parse()?;
    if let Some(k) = &a.max_calls {
        if a.algorithm != "hybrid" {
            return Err(Error::Argument("--max-calls applies to --algorithm hybrid".into()));
        }
        algorithm = if k == "inf" {
            Algorithm::HybridInf
        } else {
            format!("hybrid-{k}").parse()?
        };
    }
    let c = &a.common;
    let (id, instance) = InstanceSource::parse(&a.instance).load(c.domain.as_deref(), c.seed)?;
    let req = RunRequest {
        heuristic: c.heuristic.clone(),
        node_threshold: c.threshold,
        node_budget: c.node_budget,
        time_budget: time_budget(c.time_budget)?,
        audit: a.audit,
        ..RunRequest::new(id, instance, algorithm)
    };
    let cache = cache_dir_from_env();
    let result = cli_solve(&req, cache.as_deref())?;
    print!("{}", format_rows(std::slice::from_ref(&result.row), c.format, !c.no_time));
    if a.print_calls {
        for call in &result.calls {
            println!(
                "call iteration={} bound={} depths={}..{} seeds={} -> {}",
                call.iteration,
                call.bound,
                call.set.depth_range.0,
                call.set.depth_range.1,
                call.set.members.len(),
                match &call.outcome {
                    hybrid_search::bfhs::BfhsOutcome::Solved { cost, .. } => format!("solved cost={cost}"),
                    hybrid_search::bfhs::BfhsOutcome::Failed { next_f, .. } => format!("failed next_f={next_f}"),
                    hybrid_search::bfhs::BfhsOutcome::BudgetExceeded { .. } => "budget-exceeded".into(),
                }
            );
        }
    }
    if a.print_path {
        if let Some(sol) = result.report.solution() {
            for s in &sol.states {
                println!("{}", result.problem.space.describe(s));
            }
        }
    }
    Ok(result.row.exit_code() as u8)
}

fn bench(a: BenchArgs) -> Result<u8> {
    check_budgets(&a.common)?;
    let c = &a.common;
    let text = std::fs::read_to_string(&a.suite)?;
    let entries = parse_suite(&text, a.suite.parent()).map_err(|e| match e {
        Error::Parse { line, message } => {
            Error::Argument(format!("{}:{line}: {message}", a.suite.display()))
        }
        other => other,
    })?;
    let tb = time_budget(c.time_budget)?;
    let mut requests = Vec::new();
    for e in &entries {
        for mut r in e.requests(c.domain.as_deref(), c.seed)? {
            if e.heuristic.is_none() {
                r.heuristic = c.heuristic.clone();
            }
            r.node_threshold = r.node_threshold.or(c.threshold);
            r.node_budget = c.node_budget;
            r.time_budget = tb;
            requests.push(r);
        }
    }
    let cache = cache_dir_from_env();
    let rows = cli_bench(&requests, cache.as_deref(), a.jobs.max(1));
    print!("{}", format_rows(&rows, c.format, !c.no_time));
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("{} {}: {}", r.instance, r.algorithm, r.error.as_deref().unwrap_or(""));
    }
    Ok(0)
}

fn gen(a: GenArgs) -> Result<u8> {
    let spec = GenSpec::parse(&a.spec)?;
    let instances = generate_instances(&spec, a.count, a.seed)?;
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir)?;
        for g in &instances {
            std::fs::write(dir.join(format!("{}.inst", g.id)), g.spec.to_text())?;
        }
    } else {
        for g in &instances {
            println!("# {}\n{}", g.id, g.spec.to_text());
        }
    }
    Ok(0)
}

fn oracle(a: OracleArgs) -> Result<u8> {
    println!("instance,distance");
    for src in &a.instance {
        let (id, inst) = InstanceSource::parse(src).load(a.domain.as_deref(), a.seed)?;
        let p = inst.build()?;
        let sol = bfs_solve(&p.space, &p.start, &p.goal, a.limit)?;
        println!(
            "{id},{}",
            sol.as_ref().map_or("unreachable".to_string(), |s| s.cost.to_string())
        );
        if a.print_path {
            for s in sol.iter().flat_map(|s| &s.states) {
                println!("  {}", p.space.describe(s));
            }
        }
    }
    Ok(0)
}
