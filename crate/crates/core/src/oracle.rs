//! Uninformed breadth-first search, used as ground truth for the engines.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::state::{Cost, GoalTest, PackedState, Solution, StateSpace};

/// Default cap on the number of states the oracle will store.
pub const DEFAULT_STATE_LIMIT: usize = 20_000_000;

/// Shortest path from `start` to any goal. `Ok(None)` means no goal is
/// reachable; exceeding `state_limit` stored states is a resource error.
pub fn bfs_solve<S: StateSpace + ?Sized>(
    space: &S,
    start: &PackedState,
    goal: &GoalTest,
    state_limit: usize,
) -> Result<Option<Solution>> {
    let mut parent: FxHashMap<PackedState, Option<PackedState>> = FxHashMap::default();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    let mut succ = Vec::new();
    let mut found = None;
    if goal.is_goal(start) {
        found = Some(start.clone());
    }
    'search: while found.is_none() {
        let Some(s) = queue.pop_front() else { break };
        succ.clear();
        space.expand(&s, &mut succ)?;
        for (t, _) in succ.drain(..) {
            if parent.contains_key(&t) {
                continue;
            }
            parent.insert(t.clone(), Some(s.clone()));
            if goal.is_goal(&t) {
                found = Some(t);
                break 'search;
            }
            if parent.len() > state_limit {
                return Err(Error::Resource {
                    required: parent.len() as u64,
                    budget: state_limit as u64,
                });
            }
            queue.push_back(t);
        }
    }
    Ok(found.map(|g| {
        let mut states = vec![g];
        while let Some(Some(p)) = parent.get(states.last().expect("non-empty")) {
            states.push(p.clone());
        }
        states.reverse();
        Solution::from_states(states)
    }))
}

/// Distance between two states, or `None` if `to` is unreachable.
pub fn bfs_distance<S: StateSpace + ?Sized>(
    space: &S,
    from: &PackedState,
    to: &PackedState,
    state_limit: usize,
) -> Result<Option<Cost>> {
    Ok(bfs_solve(space, from, &GoalTest::State(to.clone()), state_limit)?.map(|s| s.cost))
}

/// Distances from `goal` to every state that can reach it, by BFS over
/// successors. Only valid on spaces where every edge is reversible.
pub fn distance_table<S: StateSpace + ?Sized>(
    space: &S,
    goal: &PackedState,
    state_limit: usize,
) -> Result<FxHashMap<PackedState, Cost>> {
    let mut dist = FxHashMap::default();
    dist.insert(goal.clone(), 0);
    let mut queue = VecDeque::from([goal.clone()]);
    let mut succ = Vec::new();
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        succ.clear();
        space.expand(&s, &mut succ)?;
        for (t, _) in succ.drain(..) {
            if !dist.contains_key(&t) {
                if dist.len() >= state_limit {
                    return Err(Error::Resource {
                        required: dist.len() as u64 + 1,
                        budget: state_limit as u64,
                    });
                }
                dist.insert(t.clone(), d + 1);
                queue.push_back(t);
            }
        }
    }
    Ok(dist)
}
