//! A*+BFHS: A* until a stored-node threshold, then iterations of BFHS
//! calls seeded from the A* frontier.
//!
//! Every iteration takes the smallest f-value among the live frontier
//! nodes as its bound and splits the frontier nodes at that f-value into
//! depth groups, searched deepest first. A failed call raises the f-value
//! of all its seeds to the call's `next_f`; the first successful call ends
//! the search. The path is the A* path to the goal's ancestral frontier
//! node followed by one bounded A* search from that node to the goal.

use std::time::Instant;

use rustc_hash::FxHashMap;

use crate::astar::{run_astar, AStarConfig, AStarOutcome, NodeStore};
use crate::bfhs::{run_bfhs, BfhsCall, BfhsOutcome, BfhsSeed, CallStats};
use crate::error::{Error, Result};
use crate::heuristics::Heuristic;
use crate::state::{validate_solution, Cost, GoalTest, PackedState, Solution, StateSpace, INFINITE};
use crate::stats::{Budget, IterationStats, Outcome, RunReport, RunStats};

pub const DEFAULT_MAX_CALLS: usize = 4;

/// Rough memory footprint of one A* node, for turning byte budgets into
/// node thresholds.
pub const BYTES_PER_STORED_NODE: u64 = 64;

#[derive(Clone, Copy, Debug)]
pub struct HybridConfig {
    /// A*-phase cap on stored (Open + Closed) nodes.
    pub node_threshold: u64,
    /// Calls per iteration; `None` means one call per frontier depth.
    pub max_calls: Option<usize>,
    pub audit: bool,
    pub budget: Budget,
}

impl Default for HybridConfig {
    fn default() -> Self {
        HybridConfig {
            node_threshold: 1_000_000,
            max_calls: Some(DEFAULT_MAX_CALLS),
            audit: false,
            budget: Budget::unlimited(),
        }
    }
}

/// A frontier node as seen by the BFHS phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierNode {
    /// Id in the A*-phase store.
    pub id: u32,
    pub g: Cost,
    pub f: Cost,
}

/// The seeds of one call together with their shared f-value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierSet {
    /// Store ids, shallow first.
    pub members: Vec<u32>,
    pub depth_range: (Cost, Cost),
    pub current_f: Cost,
    pub retired: bool,
}

impl FrontierSet {
    fn from_group(group: &[&FrontierNode], f: Cost) -> Self {
        FrontierSet {
            members: group.iter().map(|n| n.id).collect(),
            depth_range: (
                group.iter().map(|n| n.g).min().unwrap_or(0),
                group.iter().map(|n| n.g).max().unwrap_or(0),
            ),
            current_f: f,
            retired: f == INFINITE,
        }
    }
}

/// Splits the frontier nodes of one bound into call groups, deepest group
/// first. `max_calls = None` gives one group per depth; otherwise depths
/// are cut into chunks of `ceil(D / max_calls)` counted from the deepest,
/// so only the shallowest chunk can be short. Within a group nodes are
/// ordered by depth, shallow first, then by store id.
pub fn partition_frontier<'a>(
    nodes: &[&'a FrontierNode],
    max_calls: Option<usize>,
) -> Result<Vec<Vec<&'a FrontierNode>>> {
    if nodes.is_empty() {
        return Err(Error::Argument("no frontier nodes to partition".into()));
    }
    if max_calls == Some(0) {
        return Err(Error::Argument("max_calls must be at least 1".into()));
    }
    let mut depths: Vec<Cost> = nodes.iter().map(|n| n.g).collect();
    depths.sort_unstable();
    depths.dedup();
    depths.reverse();
    let chunk = match max_calls {
        None => 1,
        Some(k) => depths.len().div_ceil(k),
    };
    Ok(depths
        .chunks(chunk)
        .map(|ds| {
            let mut group: Vec<&FrontierNode> =
                nodes.iter().copied().filter(|n| ds.contains(&n.g)).collect();
            group.sort_by_key(|n| (n.g, n.id));
            group
        })
        .collect())
}

/// Applies a failed call's outcome to its seed set.
pub fn update_set_f(set: &mut FrontierSet, outcome: &BfhsOutcome) -> Result<()> {
    match outcome {
        BfhsOutcome::Failed { next_f, .. } => {
            if *next_f <= set.current_f {
                return Err(Error::Internal(format!(
                    "set f-value would drop from {} to {next_f}",
                    set.current_f
                )));
            }
            set.current_f = *next_f;
            set.retired = *next_f == INFINITE;
            Ok(())
        }
        _ => Err(Error::State("only a failed call updates a frontier set".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CallRecord {
    pub iteration: usize,
    pub bound: Cost,
    /// The call's seed set, with `current_f` as left by the call.
    pub set: FrontierSet,
    pub outcome: BfhsOutcome,
}

#[derive(Clone, Debug)]
pub struct HybridReport {
    pub report: RunReport,
    pub calls: Vec<CallRecord>,
    /// A*-phase store and frontier ids (absent when A* alone finished).
    pub phase1: Option<(NodeStore, Vec<u32>)>,
    /// Store id of the solution's ancestral frontier node.
    pub origin: Option<u32>,
    pub origin_g: Option<Cost>,
    pub suffix_cost: Option<Cost>,
}

pub fn run_hybrid<S, H>(
    space: &S,
    h: &H,
    start: &PackedState,
    goal: &GoalTest,
    config: &HybridConfig,
) -> Result<HybridReport>
where
    S: StateSpace + ?Sized,
    H: Heuristic + ?Sized,
{
    if config.node_threshold == 0 {
        return Err(Error::Argument("node threshold must be positive".into()));
    }
    if config.max_calls == Some(0) {
        return Err(Error::Argument("max_calls must be at least 1".into()));
    }
    let clock = Instant::now();
    let astar_cfg = AStarConfig {
        node_threshold: Some(config.node_threshold),
        budget: config.budget,
        ..Default::default()
    };
    let (frontier_ids, store, astar_stats) = match run_astar(space, h, start, goal, &astar_cfg)? {
        AStarOutcome::ThresholdReached {
            frontier,
            store,
            stats,
        } => (frontier, store, stats),
        other => {
            let mut stats = other.stats().clone();
            let outcome = match other {
                AStarOutcome::Solved { solution, .. } => Outcome::Solved(solution),
                AStarOutcome::Exhausted(_) => Outcome::Unsolvable,
                _ => Outcome::BudgetExceeded,
            };
            stats.wall_time = clock.elapsed().as_secs_f64();
            return Ok(HybridReport {
                report: RunReport { outcome, stats },
                calls: Vec::new(),
                phase1: None,
                origin: None,
                origin_g: None,
                suffix_cost: None,
            });
        }
    };

    let phase1_stored = store.len() as u64;
    let mut stats = RunStats {
        phase1_stored,
        peak_stored: phase1_stored,
        generated_prev_iterations: astar_stats.total_generated,
        expansions: astar_stats.expansions,
        heuristic_evaluations: astar_stats.heuristic_evaluations,
        ..Default::default()
    };
    let mut frontier: Vec<FrontierNode> = frontier_ids
        .iter()
        .map(|&id| {
            let n = store.get(id);
            FrontierNode {
                id,
                g: n.g,
                f: n.g.saturating_add(n.h),
            }
        })
        .collect();
    let position: FxHashMap<u32, usize> =
        frontier.iter().enumerate().map(|(i, n)| (n.id, i)).collect();
    let mut calls = Vec::new();
    let mut iteration = 0;
    let mut last_bound = None;

    let report = |stats: RunStats, outcome, calls, origin: Option<(u32, Cost, Cost)>, store, frontier_ids| {
        let mut stats: RunStats = stats;
        stats.wall_time = clock.elapsed().as_secs_f64();
        stats.seal();
        HybridReport {
            report: RunReport { outcome, stats },
            calls,
            phase1: Some((store, frontier_ids)),
            origin: origin.map(|o| o.0),
            origin_g: origin.map(|o| o.1),
            suffix_cost: origin.map(|o| o.2),
        }
    };

    loop {
        let bound = frontier.iter().map(|n| n.f).min().unwrap_or(INFINITE);
        if bound == INFINITE {
            return Ok(report(stats, Outcome::Unsolvable, calls, None, store, frontier_ids));
        }
        debug_assert!(last_bound.is_none_or(|b| bound > b));
        last_bound = Some(bound);

        let at_bound: Vec<&FrontierNode> = frontier.iter().filter(|n| n.f == bound).collect();
        let groups = partition_frontier(&at_bound, config.max_calls)?;
        let mut level = IterationStats {
            bound,
            ..Default::default()
        };
        let mut updates: Vec<(Vec<u32>, Cost)> = Vec::new();

        for group in &groups {
            let used = stats.generated_prev_iterations + level.generated - astar_stats.total_generated;
            let call = BfhsCall {
                bound,
                seeds: group
                    .iter()
                    .map(|n| BfhsSeed {
                        state: store.get(n.id).state.clone(),
                        g: n.g,
                        origin: n.id,
                    })
                    .collect(),
                relay_depth: None,
                external_store: Some(&store),
                budget: config.budget.after(astar_stats.total_generated + used),
                audit: config.audit,
            };
            let outcome = run_bfhs(space, h, &call, goal)?;
            let cs = *outcome.stats();
            absorb(&mut stats, &mut level, phase1_stored, &cs);
            let mut set = FrontierSet::from_group(group, bound);

            match &outcome {
                BfhsOutcome::Failed { .. } => {
                    update_set_f(&mut set, &outcome)?;
                    updates.push((set.members.clone(), set.current_f));
                    calls.push(CallRecord {
                        iteration,
                        bound,
                        set,
                        outcome,
                    });
                }
                BfhsOutcome::BudgetExceeded { .. } => {
                    calls.push(CallRecord {
                        iteration,
                        bound,
                        set,
                        outcome,
                    });
                    stats.generated_last_iteration = level.generated;
                    stats.iterations.push(level);
                    return Ok(report(stats, Outcome::BudgetExceeded, calls, None, store, frontier_ids));
                }
                BfhsOutcome::Solved {
                    goal: goal_state,
                    cost,
                    origin,
                    ..
                } => {
                    let (goal_state, cost, origin) = (goal_state.clone(), *cost, *origin);
                    calls.push(CallRecord {
                        iteration,
                        bound,
                        set,
                        outcome,
                    });
                    stats.generated_last_iteration = level.generated;
                    stats.iterations.push(level);
                    let (solution, rec) =
                        reconstruct_single(space, h, &store, origin, &goal_state, cost)?;
                    validate_solution(space, start, goal, &solution).map_err(Error::Internal)?;
                    stats.generated_reconstruction = rec;
                    stats.solution_cost = Some(solution.cost);
                    let og = store.get(origin).g;
                    let info = Some((origin, og, cost - og));
                    return Ok(report(
                        stats,
                        Outcome::Solved(solution),
                        calls,
                        info,
                        store,
                        frontier_ids,
                    ));
                }
            }
        }

        for (members, f) in updates {
            for id in members {
                frontier[position[&id]].f = f;
            }
        }
        stats.generated_prev_iterations += level.generated;
        stats.iterations.push(level);
        iteration += 1;
    }
}

fn absorb(stats: &mut RunStats, level: &mut IterationStats, phase1: u64, cs: &CallStats) {
    level.generated += cs.generated;
    level.expanded += cs.expanded;
    level.peak_stored = level.peak_stored.max(phase1 + cs.peak_stored);
    stats.expansions += cs.expanded;
    stats.heuristic_evaluations += cs.heuristic_evaluations;
    stats.peak_stored = stats.peak_stored.max(phase1 + cs.peak_stored);
    stats.peak_resident_layers = stats.peak_resident_layers.max(cs.peak_layers);
    stats.audit_violations += cs.audit_violations;
}

/// Path from the store root to frontier node `origin`, then one A* search
/// from there to `goal_state` pruning `f > cost - g(origin)`. Returns the
/// path and the suffix search's generated count.
pub fn reconstruct_single<S, H>(
    space: &S,
    h: &H,
    store: &NodeStore,
    origin: u32,
    goal_state: &PackedState,
    cost: Cost,
) -> Result<(Solution, u64)>
where
    S: StateSpace + ?Sized,
    H: Heuristic + ?Sized,
{
    let mut states = store.path_to(origin);
    let og = store.get(origin).g;
    if og > cost {
        return Err(Error::Internal(format!(
            "frontier node at depth {og} beyond solution cost {cost}"
        )));
    }
    if states.last() == Some(goal_state) {
        return Ok((Solution::from_states(states), 0));
    }
    let suffix = run_astar(
        space,
        h,
        &store.get(origin).state,
        &GoalTest::State(goal_state.clone()),
        &AStarConfig {
            cost_bound: Some(cost - og),
            ..Default::default()
        },
    )?;
    let generated = suffix.stats().total_generated;
    let AStarOutcome::Solved { solution, .. } = suffix else {
        return Err(Error::Internal("no path from frontier node to goal".into()));
    };
    if solution.cost != cost - og {
        return Err(Error::Internal(format!(
            "suffix cost {} differs from expected {}",
            solution.cost,
            cost - og
        )));
    }
    states.extend(solution.states.into_iter().skip(1));
    Ok((Solution::from_states(states), generated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{figure1_space, SlidingTile, FIGURE1_THRESHOLD};
    use crate::heuristics::HeuristicHandle;

    fn nodes(depths: &[Cost]) -> Vec<FrontierNode> {
        depths
            .iter()
            .enumerate()
            .map(|(i, &g)| FrontierNode {
                id: i as u32,
                g,
                f: 20,
            })
            .collect()
    }

    fn depth_groups(groups: &[Vec<&FrontierNode>]) -> Vec<Vec<Cost>> {
        groups
            .iter()
            .map(|g| {
                let mut d: Vec<_> = g.iter().map(|n| n.g).collect();
                d.dedup();
                d
            })
            .collect()
    }

    #[test]
    fn partition_examples() {
        let ns = nodes(&[7, 8, 9, 10, 11, 12, 12, 7]);
        let refs: Vec<_> = ns.iter().collect();
        let g = partition_frontier(&refs, Some(3)).unwrap();
        assert_eq!(depth_groups(&g), vec![vec![11, 12], vec![9, 10], vec![7, 8]]);
        let g = partition_frontier(&refs, None).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[0][0].g, 12);

        let ns = nodes(&[3, 2, 3]);
        let refs: Vec<_> = ns.iter().collect();
        let g = partition_frontier(&refs, Some(1)).unwrap();
        assert_eq!(depth_groups(&g), vec![vec![2, 3]]);
        assert!(partition_frontier(&[], None).is_err());
        let one = nodes(&[4, 4]);
        let refs: Vec<_> = one.iter().collect();
        assert_eq!(partition_frontier(&refs, Some(5)).unwrap().len(), 1);
    }

    #[test]
    fn set_update_rules() {
        let mut set = FrontierSet {
            members: vec![1],
            depth_range: (1, 1),
            current_f: 8,
            retired: false,
        };
        let fail = |next_f| BfhsOutcome::Failed {
            next_f,
            stats: Default::default(),
        };
        update_set_f(&mut set, &fail(10)).unwrap();
        assert_eq!(set.current_f, 10);
        update_set_f(&mut set, &fail(INFINITE)).unwrap();
        assert!(set.retired);
        let solved = BfhsOutcome::Solved {
            goal: PackedState::from_bytes(&[0]),
            cost: 1,
            origin: 0,
            relay: None,
            stats: Default::default(),
        };
        assert!(update_set_f(&mut set, &solved).is_err());
    }

    #[test]
    fn figure1_call_log() {
        let g = figure1_space();
        let sp = g.space().unwrap();
        let h = HeuristicHandle::VertexTable(sp.heuristic_values().to_vec().into());
        let cfg = HybridConfig {
            node_threshold: FIGURE1_THRESHOLD,
            max_calls: None,
            ..Default::default()
        };
        let r = run_hybrid(&sp, &h, &g.start(), &g.goal_test(), &cfg).unwrap();
        assert_eq!(r.report.cost(), Some(9));
        let (store, _) = r.phase1.as_ref().unwrap();
        let log: Vec<(Cost, Vec<String>, Cost)> = r
            .calls
            .iter()
            .map(|c| {
                let names = c.set.members.iter().map(|&id| sp.describe(&store.get(id).state)).collect();
                (c.bound, names, c.set.current_f)
            })
            .collect();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(
            log,
            vec![
                (8, s(&["H", "I", "J", "K"]), 9),
                (8, s(&["E", "F"]), 9),
                (8, s(&["B"]), 10),
                (9, s(&["H", "I", "J", "K"]), 9),
            ]
        );
        assert_eq!(r.origin_g, Some(3));
        assert_eq!(r.suffix_cost, Some(6));
    }

    #[test]
    fn threshold_of_one_searches_from_start() {
        let sp = SlidingTile::new(3, 3).unwrap();
        let goal = sp.goal_state();
        let mut s = goal.clone();
        for op in [crate::domains::tile::UP, crate::domains::tile::LEFT] {
            s = sp.apply(&s, op).unwrap().unwrap();
        }
        let cfg = HybridConfig {
            node_threshold: 1,
            ..Default::default()
        };
        let h = HeuristicHandle::Zero;
        let r = run_hybrid(&sp, &h, &s, &GoalTest::State(goal), &cfg).unwrap();
        assert_eq!(r.report.cost(), Some(2));
        assert_eq!(r.origin_g, Some(0));
        assert!(r.report.stats.generated_reconstruction > 0);
    }
}
