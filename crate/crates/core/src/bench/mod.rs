//! Running algorithms on instances and reporting the results.

mod output;
mod suite;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::astar::{run_astar, AStarConfig, AStarOutcome};
use crate::bfida::{run_bfida, BfidaConfig};
use crate::domains::generate::{generate_instances, GenSpec};
use crate::domains::{figure1_space, parse_instance, Domain, InstanceSpec, Problem, FIGURE1_THRESHOLD};
use crate::error::{Error, Result};
use crate::heuristics::pdb::CACHE_DIR_ENV;
use crate::heuristics::HeuristicHandle;
use crate::hybrid::{run_hybrid, CallRecord, HybridConfig, DEFAULT_MAX_CALLS};
use crate::state::Cost;
use crate::stats::{Budget, Outcome, RunReport};

pub use output::{format_rows, hardware_metadata, summarize, Format, Summary};
pub use suite::{parse_suite, SuiteEntry};

/// Default A*-phase threshold for hybrid runs.
pub const DEFAULT_THRESHOLD: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    AStar,
    Bfida,
    /// A*+BFHS with one BFHS call per frontier depth.
    HybridInf,
    /// A*+BFHS with at most `k` calls per iteration.
    Hybrid(usize),
}

impl FromStr for Algorithm {
    type Err = Error;

    /// `astar`, `bfida`, `hybrid-inf`, `hybrid-<k>`, or `hybrid` (= `hybrid-4`).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "astar" | "a*" => Ok(Algorithm::AStar),
            "bfida" | "bfida*" => Ok(Algorithm::Bfida),
            "hybrid-inf" => Ok(Algorithm::HybridInf),
            "hybrid" => Ok(Algorithm::Hybrid(DEFAULT_MAX_CALLS)),
            _ => match s.strip_prefix("hybrid-").map(str::parse::<usize>) {
                Some(Ok(k)) if k > 0 => Ok(Algorithm::Hybrid(k)),
                _ => Err(Error::Argument(format!("unknown algorithm `{s}`"))),
            },
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::AStar => f.write_str("astar"),
            Algorithm::Bfida => f.write_str("bfida"),
            Algorithm::HybridInf => f.write_str("hybrid-inf"),
            Algorithm::Hybrid(k) => write!(f, "hybrid-{k}"),
        }
    }
}

impl Algorithm {
    pub const ALL_DEFAULT: [Algorithm; 4] = [
        Algorithm::AStar,
        Algorithm::Bfida,
        Algorithm::HybridInf,
        Algorithm::Hybrid(DEFAULT_MAX_CALLS),
    ];
}

/// Where an instance comes from: a file, `figure1`, or `gen:<spec>`
/// (the first instance generated with the request's seed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceSource {
    File(PathBuf),
    Figure1,
    Generated { spec: String, index: usize },
}

impl InstanceSource {
    pub fn parse(s: &str) -> Self {
        if s == "figure1" {
            InstanceSource::Figure1
        } else if let Some(rest) = s.strip_prefix("gen:") {
            match rest.rsplit_once('#').map(|(a, b)| (a, b.parse::<usize>())) {
                Some((spec, Ok(index))) => InstanceSource::Generated {
                    spec: spec.to_string(),
                    index,
                },
                _ => InstanceSource::Generated {
                    spec: rest.to_string(),
                    index: 0,
                },
            }
        } else {
            InstanceSource::File(PathBuf::from(s))
        }
    }

    /// Loads the instance, returning its id and parsed form.
    pub fn load(&self, domain: Option<&str>, seed: u64) -> Result<(String, InstanceSpec)> {
        match self {
            InstanceSource::Figure1 => Ok(("figure1".into(), InstanceSpec::Graph(figure1_space()))),
            InstanceSource::File(path) => {
                let text = std::fs::read_to_string(path)?;
                let spec = parse_instance(&text, domain).map_err(|e| match e {
                    Error::Parse { line, message } => Error::Argument(format!(
                        "{}:{line}: {message}",
                        path.display()
                    )),
                    other => other,
                })?;
                let id = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                Ok((id, spec))
            }
            InstanceSource::Generated { spec, index } => {
                let g = GenSpec::parse(spec)?;
                let mut all = generate_instances(&g, index + 1, seed)?;
                let inst = all.pop().expect("index + 1 instances");
                Ok((inst.id, inst.spec))
            }
        }
    }
}

/// Everything needed to solve one instance with one algorithm.
#[derive(Clone, Debug)]
pub struct RunRequest {
    pub instance_id: String,
    pub instance: InstanceSpec,
    pub algorithm: Algorithm,
    pub heuristic: String,
    /// A*-phase threshold for hybrid runs; defaults to [`DEFAULT_THRESHOLD`]
    /// (or the worked-example value on `figure1`).
    pub node_threshold: Option<u64>,
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    pub audit: bool,
}

impl RunRequest {
    pub fn new(instance_id: impl Into<String>, instance: InstanceSpec, algorithm: Algorithm) -> Self {
        RunRequest {
            instance_id: instance_id.into(),
            instance,
            algorithm,
            heuristic: "default".into(),
            node_threshold: None,
            node_budget: None,
            time_budget: None,
            audit: false,
        }
    }

    pub fn threshold(&self) -> u64 {
        self.node_threshold.unwrap_or(match &self.instance {
            InstanceSpec::Graph(g) if *g == figure1_space() => FIGURE1_THRESHOLD,
            _ => DEFAULT_THRESHOLD,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Solved,
    BudgetExceeded,
    Unsolvable,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Solved => "solved",
            Status::BudgetExceeded => "budget-exceeded",
            Status::Unsolvable => "unsolvable",
            Status::Error => "error",
        })
    }
}

/// One line of a results table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub instance: String,
    pub algorithm: String,
    pub peak_stored: u64,
    pub total_generated: u64,
    pub prev_iterations: u64,
    pub last_iteration: u64,
    pub reconstruction: u64,
    pub time_s: f64,
    /// Heuristic construction time, not included in `time_s`.
    pub heuristic_build_s: f64,
    pub cost: Option<Cost>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ResultRow {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Solved => 0,
            Status::BudgetExceeded => 2,
            Status::Unsolvable => 3,
            Status::Error => 1,
        }
    }

    fn failed(instance: &str, algorithm: &str, err: &Error) -> Self {
        ResultRow {
            instance: instance.into(),
            algorithm: algorithm.into(),
            peak_stored: 0,
            total_generated: 0,
            prev_iterations: 0,
            last_iteration: 0,
            reconstruction: 0,
            time_s: 0.0,
            heuristic_build_s: 0.0,
            cost: None,
            status: Status::Error,
            error: Some(err.to_string()),
        }
    }
}

/// Full result of one run: the row plus engine-specific detail.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub row: ResultRow,
    pub report: RunReport,
    /// BFHS call log of hybrid runs.
    pub calls: Vec<CallRecord>,
    pub problem: Problem,
}

/// Pattern database cache directory from the environment, if set.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)
}

/// Builds the heuristic for a problem, returning it with its build time.
pub fn build_heuristic(
    spec: &str,
    domain: &Domain,
    cache_dir: Option<&Path>,
) -> Result<(HeuristicHandle, f64)> {
    let t = Instant::now();
    let h = HeuristicHandle::from_spec(spec, domain, cache_dir)?;
    Ok((h, t.elapsed().as_secs_f64()))
}

/// Runs one request with an already built heuristic.
pub fn run_with_heuristic(
    req: &RunRequest,
    problem: Problem,
    h: &HeuristicHandle,
    heuristic_build_s: f64,
) -> Result<RunResult> {
    let budget = Budget::new(req.node_budget, req.time_budget);
    let (space, start, goal) = (&problem.space, &problem.start, &problem.goal);
    let (report, calls) = match req.algorithm {
        Algorithm::AStar => {
            let cfg = AStarConfig {
                budget,
                ..Default::default()
            };
            let out = run_astar(space, h, start, goal, &cfg)?;
            let stats = out.stats().clone();
            let outcome = match out {
                AStarOutcome::Solved { solution, .. } => Outcome::Solved(solution),
                AStarOutcome::BudgetExceeded(_) => Outcome::BudgetExceeded,
                _ => Outcome::Unsolvable,
            };
            (RunReport { outcome, stats }, Vec::new())
        }
        Algorithm::Bfida => {
            let cfg = BfidaConfig {
                audit: req.audit,
                budget,
                ..Default::default()
            };
            (run_bfida(space, h, start, goal, &cfg)?.report, Vec::new())
        }
        Algorithm::HybridInf | Algorithm::Hybrid(_) => {
            let cfg = HybridConfig {
                node_threshold: req.threshold(),
                max_calls: match req.algorithm {
                    Algorithm::Hybrid(k) => Some(k),
                    _ => None,
                },
                audit: req.audit,
                budget,
            };
            let r = run_hybrid(space, h, start, goal, &cfg)?;
            (r.report, r.calls)
        }
    };
    let s = &report.stats;
    let status = match report.outcome {
        Outcome::Solved(_) => Status::Solved,
        Outcome::BudgetExceeded => Status::BudgetExceeded,
        Outcome::Unsolvable => Status::Unsolvable,
    };
    let row = ResultRow {
        instance: req.instance_id.clone(),
        algorithm: req.algorithm.to_string(),
        peak_stored: s.peak_stored,
        total_generated: s.total_generated,
        prev_iterations: s.generated_prev_iterations,
        last_iteration: s.generated_last_iteration,
        reconstruction: s.generated_reconstruction,
        time_s: s.wall_time,
        heuristic_build_s,
        cost: report.cost(),
        status,
        error: None,
    };
    Ok(RunResult {
        row,
        report,
        calls,
        problem,
    })
}

/// Builds the problem and heuristic for `req` and runs it.
pub fn cli_solve(req: &RunRequest, cache_dir: Option<&Path>) -> Result<RunResult> {
    let problem = req.instance.build()?;
    let (h, build_s) = build_heuristic(&req.heuristic, &problem.space, cache_dir)?;
    run_with_heuristic(req, problem, &h, build_s)
}

/// Like [`cli_solve`] but turns failures into an error row.
pub fn solve_row(req: &RunRequest, cache_dir: Option<&Path>) -> ResultRow {
    match cli_solve(req, cache_dir) {
        Ok(r) => r.row,
        Err(e) => ResultRow::failed(&req.instance_id, &req.algorithm.to_string(), &e),
    }
}

/// Runs every request, reusing heuristics between requests on the same
/// space. With `jobs > 1` rows run on a thread pool; the output order is
/// always the request order.
pub fn cli_bench(requests: &[RunRequest], cache_dir: Option<&Path>, jobs: usize) -> Vec<ResultRow> {
    use rayon::prelude::*;
    use std::collections::HashMap;

    let mut heuristics: HashMap<(String, String), Result<(HeuristicHandle, f64), String>> =
        HashMap::new();
    let mut prepared = Vec::with_capacity(requests.len());
    for req in requests {
        let problem = match req.instance.build() {
            Ok(p) => p,
            Err(e) => {
                prepared.push(Err(e.to_string()));
                continue;
            }
        };
        let key = (space_key(&req.instance), req.heuristic.clone());
        let h = heuristics
            .entry(key)
            .or_insert_with(|| {
                build_heuristic(&req.heuristic, &problem.space, cache_dir).map_err(|e| e.to_string())
            })
            .clone();
        prepared.push(h.map(|h| (problem, h)));
    }

    let run = |(req, prep): (&RunRequest, &std::result::Result<(Problem, (HeuristicHandle, f64)), String>)| {
        match prep {
            Ok((problem, (h, build_s))) => run_with_heuristic(req, problem.clone(), h, *build_s)
                .map(|r| r.row)
                .unwrap_or_else(|e| ResultRow::failed(&req.instance_id, &req.algorithm.to_string(), &e)),
            Err(msg) => ResultRow::failed(
                &req.instance_id,
                &req.algorithm.to_string(),
                &Error::Argument(msg.clone()),
            ),
        }
    };
    let pairs: Vec<_> = requests.iter().zip(prepared.iter()).collect();
    if jobs <= 1 {
        pairs.into_iter().map(run).collect()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| pairs.into_par_iter().map(run).collect()),
            Err(_) => pairs.into_iter().map(run).collect(),
        }
    }
}

/// Identifies the concrete space an instance lives in (heuristics built for
/// one space are valid for every instance with the same key).
fn space_key(inst: &InstanceSpec) -> String {
    match inst {
        InstanceSpec::Tile(t) => format!("tile-{}x{}", t.width, t.height),
        InstanceSpec::Hanoi(h) => format!("hanoi4-{}-{:?}", h.discs, h.goal),
        InstanceSpec::Pancake(p) => format!("pancake-{}", p.n()),
        // Graph heuristics are per-instance tables and cheap to build.
        InstanceSpec::Graph(g) => format!("graph-{}", InstanceSpec::Graph(g.clone()).to_text()),
    }
}
