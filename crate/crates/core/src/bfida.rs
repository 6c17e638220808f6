//! BFIDA*: repeated BFHS from the start node with increasing cost bounds.
//!
//! Each iteration keeps the layer at `floor(bound * relay_fraction)` as a
//! relay. When a goal is found, the path is recovered by two A* searches:
//! start to relay (pruning `g > depth(relay)` and `f > C*`) and relay to
//! goal (pruning `f > C* - depth(relay)`).

use std::time::Instant;

use crate::astar::{run_astar, AStarConfig, AStarOutcome};
use crate::bfhs::{run_bfhs, BfhsCall, BfhsOutcome, BfhsSeed, CallStats, RelayNode};
use crate::error::{Error, Result};
use crate::heuristics::Heuristic;
use crate::state::{validate_solution, Cost, GoalTest, PackedState, Solution, StateSpace, INFINITE};
use crate::stats::{Budget, IterationStats, Outcome, RunReport, RunStats};

#[derive(Clone, Copy, Debug)]
pub struct BfidaConfig {
    /// Relay depth as a fraction `num / den` of the iteration bound.
    pub relay_num: u32,
    pub relay_den: u32,
    pub audit: bool,
    pub budget: Budget,
}

impl Default for BfidaConfig {
    fn default() -> Self {
        BfidaConfig {
            relay_num: 1,
            relay_den: 4,
            audit: false,
            budget: Budget::unlimited(),
        }
    }
}

impl BfidaConfig {
    pub fn relay_depth(&self, bound: Cost) -> Cost {
        (bound as u64 * self.relay_num as u64 / self.relay_den as u64) as Cost
    }

    fn check(&self) -> Result<()> {
        if self.relay_den == 0 || self.relay_num == 0 || self.relay_num >= self.relay_den {
            return Err(Error::Argument(format!(
                "relay fraction {}/{} must lie strictly between 0 and 1",
                self.relay_num, self.relay_den
            )));
        }
        Ok(())
    }
}

/// One BFHS iteration of a BFIDA* run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfidaIteration {
    pub bound: Cost,
    pub relay_depth: Cost,
    pub outcome: BfhsOutcome,
}

#[derive(Clone, Debug)]
pub struct BfidaReport {
    pub report: RunReport,
    pub iterations: Vec<BfidaIteration>,
    /// Relay node used for reconstruction.
    pub relay: Option<RelayNode>,
}

pub fn run_bfida<S, H>(
    space: &S,
    h: &H,
    start: &PackedState,
    goal: &GoalTest,
    config: &BfidaConfig,
) -> Result<BfidaReport>
where
    S: StateSpace + ?Sized,
    H: Heuristic + ?Sized,
{
    config.check()?;
    let clock = Instant::now();
    let mut stats = RunStats::default();
    let mut iterations = Vec::new();
    let mut bound = h.evaluate(start);
    stats.heuristic_evaluations += 1;

    let finish = |mut stats: RunStats, outcome: Outcome| {
        stats.wall_time = clock.elapsed().as_secs_f64();
        stats.seal();
        RunReport { outcome, stats }
    };

    while bound != INFINITE {
        let used = stats.generated_prev_iterations;
        let relay_depth = config.relay_depth(bound);
        let call = BfhsCall {
            bound,
            seeds: vec![BfhsSeed {
                state: start.clone(),
                g: 0,
                origin: 0,
            }],
            relay_depth: Some(relay_depth),
            external_store: None,
            budget: config.budget.after(used),
            audit: config.audit,
        };
        let outcome = run_bfhs(space, h, &call, goal)?;
        let cs = *outcome.stats();
        absorb(&mut stats, bound, &cs);
        iterations.push(BfidaIteration {
            bound,
            relay_depth,
            outcome: outcome.clone(),
        });
        match outcome {
            BfhsOutcome::Failed { next_f, .. } => {
                debug_assert!(next_f > bound);
                stats.generated_prev_iterations += cs.generated;
                bound = next_f;
            }
            BfhsOutcome::BudgetExceeded { .. } => {
                stats.generated_last_iteration = cs.generated;
                return Ok(BfidaReport {
                    report: finish(stats, Outcome::BudgetExceeded),
                    iterations,
                    relay: None,
                });
            }
            BfhsOutcome::Solved {
                goal: goal_state,
                cost,
                relay,
                ..
            } => {
                stats.generated_last_iteration = cs.generated;
                let (solution, rec_generated) = reconstruct_two_phase(
                    space,
                    h,
                    start,
                    relay.as_ref(),
                    &goal_state,
                    cost,
                )?;
                stats.generated_reconstruction = rec_generated;
                stats.solution_cost = Some(solution.cost);
                validate_solution(space, start, goal, &solution).map_err(Error::Internal)?;
                return Ok(BfidaReport {
                    report: finish(stats, Outcome::Solved(solution)),
                    iterations,
                    relay,
                });
            }
        }
    }
    Ok(BfidaReport {
        report: finish(stats, Outcome::Unsolvable),
        iterations,
        relay: None,
    })
}

fn absorb(stats: &mut RunStats, bound: Cost, cs: &CallStats) {
    stats.expansions += cs.expanded;
    stats.heuristic_evaluations += cs.heuristic_evaluations;
    stats.peak_stored = stats.peak_stored.max(cs.peak_stored);
    stats.peak_resident_layers = stats.peak_resident_layers.max(cs.peak_layers);
    stats.audit_violations += cs.audit_violations;
    stats.iterations.push(IterationStats {
        bound,
        generated: cs.generated,
        expanded: cs.expanded,
        peak_stored: cs.peak_stored,
    });
}

/// Recovers an optimal path of cost `cost` through `relay` (the start when
/// `None`). Returns the path and the nodes generated by both subsearches.
pub fn reconstruct_two_phase<S, H>(
    space: &S,
    h: &H,
    start: &PackedState,
    relay: Option<&RelayNode>,
    goal_state: &PackedState,
    cost: Cost,
) -> Result<(Solution, u64)>
where
    S: StateSpace + ?Sized,
    H: Heuristic + ?Sized,
{
    let (relay_state, depth) = match relay {
        Some(r) => (r.state.clone(), r.depth),
        None => (start.clone(), 0),
    };
    if depth > cost {
        return Err(Error::Internal(format!(
            "relay depth {depth} exceeds solution cost {cost}"
        )));
    }
    let mut generated = 0;

    let first = run_astar(
        space,
        h,
        start,
        &GoalTest::State(relay_state.clone()),
        &AStarConfig {
            cost_bound: Some(cost),
            g_bound: Some(depth + 1),
            ..Default::default()
        },
    )?;
    generated += first.stats().total_generated;
    let AStarOutcome::Solved { solution: prefix, .. } = first else {
        return Err(Error::Internal("no path from start to relay".into()));
    };

    let second = run_astar(
        space,
        h,
        &relay_state,
        &GoalTest::State(goal_state.clone()),
        &AStarConfig {
            cost_bound: Some(cost - depth),
            ..Default::default()
        },
    )?;
    generated += second.stats().total_generated;
    let AStarOutcome::Solved { solution: suffix, .. } = second else {
        return Err(Error::Internal("no path from relay to goal".into()));
    };

    if prefix.cost != depth || suffix.cost != cost - depth {
        return Err(Error::Internal(format!(
            "reconstructed segments cost {} + {}, expected {depth} + {}",
            prefix.cost,
            suffix.cost,
            cost - depth
        )));
    }
    let mut states = prefix.states;
    states.extend(suffix.states.into_iter().skip(1));
    Ok((Solution::from_states(states), generated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{figure1_space, Hanoi4Instance, SlidingTile};
    use crate::heuristics::HeuristicHandle;

    #[test]
    fn start_is_goal() {
        let sp = SlidingTile::new(3, 3).unwrap();
        let s = sp.goal_state();
        let r = run_bfida(&sp, &HeuristicHandle::Zero, &s, &GoalTest::State(s.clone()), &Default::default())
            .unwrap();
        assert_eq!(r.report.cost(), Some(0));
        assert_eq!(r.iterations.len(), 1);
        assert_eq!(r.iterations[0].bound, 0);
    }

    #[test]
    fn figure1_cost_and_bounds() {
        let g = figure1_space();
        let sp = g.space().unwrap();
        let h = HeuristicHandle::VertexTable(sp.heuristic_values().to_vec().into());
        let r = run_bfida(&sp, &h, &g.start(), &g.goal_test(), &Default::default()).unwrap();
        assert_eq!(r.report.cost(), Some(9));
        let bounds: Vec<_> = r.iterations.iter().map(|i| i.bound).collect();
        assert_eq!(bounds, [6, 7, 8, 9]);
        assert!(r.report.stats.is_consistent());
    }

    #[test]
    fn hanoi_three_discs() {
        let inst = Hanoi4Instance::tower(3, 0, 3);
        let sp = inst.space().unwrap();
        let r = run_bfida(
            &sp,
            &HeuristicHandle::Zero,
            &inst.start(),
            &GoalTest::State(sp.goal_state().clone()),
            &Default::default(),
        )
        .unwrap();
        // Frame-Stewart number for three discs and four pegs.
        assert_eq!(r.report.cost(), Some(5));
    }

    #[test]
    fn bad_relay_fraction() {
        let sp = SlidingTile::new(2, 2).unwrap();
        let s = sp.goal_state();
        let cfg = BfidaConfig {
            relay_num: 4,
            relay_den: 4,
            ..Default::default()
        };
        assert!(run_bfida(&sp, &HeuristicHandle::Zero, &s, &GoalTest::State(s.clone()), &cfg).is_err());
    }

    #[test]
    fn relay_at_start_and_goal_parent() {
        let sp = SlidingTile::new(3, 3).unwrap();
        let goal = sp.goal_state();
        let mut s = goal.clone();
        let mut path = vec![goal.clone()];
        for op in [crate::domains::tile::UP, crate::domains::tile::LEFT, crate::domains::tile::UP] {
            s = sp.apply(&s, op).unwrap().unwrap();
            path.push(s.clone());
        }
        let h = HeuristicHandle::Zero;
        let (sol, _) = reconstruct_two_phase(&sp, &h, &s, None, &goal, 3).unwrap();
        assert_eq!(sol.cost, 3);
        let parent = RelayNode {
            state: path[1].clone(),
            depth: 2,
        };
        let (sol, _) = reconstruct_two_phase(&sp, &h, &s, Some(&parent), &goal, 3).unwrap();
        assert_eq!(sol.cost, 3);
        assert_eq!(sol.states[2], path[1]);
    }
}
