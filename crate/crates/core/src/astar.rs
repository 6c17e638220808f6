//! A* with full duplicate detection, min-h tie-breaking and an optional
//! stored-node threshold.
//!
//! Open nodes are ordered by `(f, h, insertion order)`. The goal test runs
//! when a node is selected for expansion. Before each expansion the
//! successors of the selected node are generated; if storing the new ones
//! would push the Open+Closed count past `node_threshold`, the search stops
//! with that node still Open and hands its node store to the caller.
//! Heuristics are assumed consistent, so Closed nodes are never reopened.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::heuristics::Heuristic;
use crate::state::{
    f_value, AncestorRef, Cost, GoalTest, PackedState, SearchNode, Solution, StateSpace, INFINITE,
};
use crate::stats::{Budget, IterationStats, RunStats};

#[derive(Clone, Copy, Debug, Default)]
pub struct AStarConfig {
    /// Stop once storing another expansion's children would exceed this
    /// many Open+Closed nodes.
    pub node_threshold: Option<u64>,
    /// Prune nodes with `f > cost_bound`.
    pub cost_bound: Option<Cost>,
    /// Prune nodes with `g >= g_bound`.
    pub g_bound: Option<Cost>,
    pub budget: Budget,
    /// Check at every selection that no Open node has a smaller `(f, h)`.
    /// Linear in the Open list size; meant for tests.
    pub audit_order: bool,
}

/// Callbacks fired by the engines.
pub trait SearchObserver {
    fn on_expand(&mut self, _state: &PackedState, _g: Cost, _h: Cost) {}
}

pub struct NoObserver;

impl SearchObserver for NoObserver {}

#[derive(Clone, Debug)]
pub struct StoredNode {
    pub state: PackedState,
    pub g: Cost,
    pub h: Cost,
    pub parent: Option<u32>,
    pub closed: bool,
}

/// Every node generated and kept by an A* run, with its best known `g`.
#[derive(Clone, Debug, Default)]
pub struct NodeStore {
    nodes: Vec<StoredNode>,
    index: FxHashMap<PackedState, u32>,
}

impl NodeStore {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, id: u32) -> &StoredNode {
        &self.nodes[id as usize]
    }

    pub fn lookup(&self, s: &PackedState) -> Option<u32> {
        self.index.get(s).copied()
    }

    #[inline]
    pub fn g_of(&self, s: &PackedState) -> Option<Cost> {
        self.index.get(s).map(|&id| self.nodes[id as usize].g)
    }

    pub fn search_node(&self, id: u32) -> SearchNode {
        let n = self.get(id);
        SearchNode::new(
            n.state.clone(),
            n.g,
            n.h,
            n.parent.map_or(AncestorRef::None, AncestorRef::ParentLink),
        )
    }

    /// States from the root of the store to `id`, following parent links.
    pub fn path_to(&self, id: u32) -> Vec<PackedState> {
        let mut path = Vec::new();
        let mut cur = Some(id);
        while let Some(i) = cur {
            let n = self.get(i);
            path.push(n.state.clone());
            cur = n.parent;
        }
        path.reverse();
        path
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &StoredNode)> {
        self.nodes.iter().enumerate().map(|(i, n)| (i as u32, n))
    }

    fn insert(&mut self, node: StoredNode) -> u32 {
        let id = self.nodes.len() as u32;
        self.index.insert(node.state.clone(), id);
        self.nodes.push(node);
        id
    }
}

pub enum AStarOutcome {
    Solved {
        solution: Solution,
        stats: RunStats,
    },
    ThresholdReached {
        /// Store ids of the Open nodes at the stop, in creation order.
        frontier: Vec<u32>,
        store: NodeStore,
        stats: RunStats,
    },
    Exhausted(RunStats),
    BudgetExceeded(RunStats),
}

impl AStarOutcome {
    pub fn stats(&self) -> &RunStats {
        match self {
            AStarOutcome::Solved { stats, .. }
            | AStarOutcome::ThresholdReached { stats, .. }
            | AStarOutcome::Exhausted(stats)
            | AStarOutcome::BudgetExceeded(stats) => stats,
        }
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            AStarOutcome::Solved { solution, .. } => Some(solution),
            _ => None,
        }
    }
}

pub fn run_astar<S, H>(
    space: &S,
    h: &H,
    start: &PackedState,
    goal: &GoalTest,
    config: &AStarConfig,
) -> Result<AStarOutcome>
where
    S: StateSpace + ?Sized,
    H: Heuristic + ?Sized,
{
    run_astar_observed(space, h, start, goal, config, &mut NoObserver)
}

type OpenKey = Reverse<(Cost, Cost, u64, u32)>;

enum Candidate {
    New(PackedState),
    Improve(u32),
}

pub fn run_astar_observed<S, H>(
    space: &S,
    h: &H,
    start: &PackedState,
    goal: &GoalTest,
    config: &AStarConfig,
    observer: &mut dyn SearchObserver,
) -> Result<AStarOutcome>
where
    S: StateSpace + ?Sized,
    H: Heuristic + ?Sized,
{
    let clock = Instant::now();
    let mut stats = RunStats::default();
    let mut store = NodeStore::default();
    let mut open: BinaryHeap<OpenKey> = BinaryHeap::new();
    let mut seq = 0u64;

    let finish = |mut stats: RunStats, store: &NodeStore, level: Option<IterationStats>| {
        if let Some(l) = level {
            stats.iterations.push(l);
        }
        stats.peak_stored = store.len() as u64;
        stats.wall_time = clock.elapsed().as_secs_f64();
        stats.seal();
        stats
    };

    let h0 = h.evaluate(start);
    stats.heuristic_evaluations += 1;
    let start_pruned = h0 == INFINITE
        || config.cost_bound.is_some_and(|b| h0 > b)
        || config.g_bound.is_some_and(|b| b == 0);
    if start_pruned {
        return Ok(AStarOutcome::Exhausted(finish(stats, &store, None)));
    }
    let id = store.insert(StoredNode {
        state: start.clone(),
        g: 0,
        h: h0,
        parent: None,
        closed: false,
    });
    open.push(Reverse((h0, h0, seq, id)));
    seq += 1;

    let mut generated = 0u64;
    let mut level: Option<IterationStats> = None;
    let mut level_start_generated = 0u64;
    let mut succ = Vec::new();
    let mut candidates: Vec<(Candidate, Cost)> = Vec::new();

    loop {
        if config.budget.exceeded(generated) {
            stats.generated_prev_iterations = level_start_generated;
            stats.generated_last_iteration = generated - level_start_generated;
            return Ok(AStarOutcome::BudgetExceeded(finish(stats, &store, level)));
        }
        let Some(Reverse(key)) = open.pop() else {
            stats.generated_prev_iterations = level_start_generated;
            stats.generated_last_iteration = generated - level_start_generated;
            return Ok(AStarOutcome::Exhausted(finish(stats, &store, level)));
        };
        let (f, nh, _, id) = key;
        let node = &store.nodes[id as usize];
        if node.closed || f_value(node.g, node.h) != f {
            continue;
        }
        if config.audit_order {
            audit_selection(&store, (f, nh));
        }
        let g = node.g;

        if level.is_none_or(|l| f > l.bound) {
            if let Some(l) = level.take() {
                stats.iterations.push(l);
            }
            level_start_generated = generated;
            level = Some(IterationStats {
                bound: f,
                ..Default::default()
            });
        }

        if goal.is_goal(&node.state) {
            let solution = Solution::from_states(store.path_to(id));
            stats.solution_cost = Some(solution.cost);
            stats.generated_prev_iterations = level_start_generated;
            stats.generated_last_iteration = generated - level_start_generated;
            let stats = finish(stats, &store, level);
            return Ok(AStarOutcome::Solved { solution, stats });
        }

        succ.clear();
        space.expand(&node.state, &mut succ)?;
        generated += succ.len() as u64;
        if let Some(l) = level.as_mut() {
            l.generated += succ.len() as u64;
        }

        let child_g = g + 1;
        candidates.clear();
        let mut new_count = 0u64;
        for (s, _op) in succ.drain(..) {
            if config.g_bound.is_some_and(|b| child_g >= b) {
                continue;
            }
            if let Some(&cid) = store.index.get(&s) {
                let c = &store.nodes[cid as usize];
                if c.g <= child_g {
                    continue;
                }
                debug_assert!(!c.closed, "consistent heuristic never reopens");
                if !c.closed && !candidates.iter().any(|(k, _)| matches!(k, Candidate::Improve(x) if *x == cid)) {
                    candidates.push((Candidate::Improve(cid), c.h));
                }
                continue;
            }
            if candidates
                .iter()
                .any(|(k, _)| matches!(k, Candidate::New(t) if *t == s))
            {
                continue;
            }
            let ch = h.evaluate(&s);
            stats.heuristic_evaluations += 1;
            if ch == INFINITE || config.cost_bound.is_some_and(|b| f_value(child_g, ch) > b) {
                continue;
            }
            new_count += 1;
            candidates.push((Candidate::New(s), ch));
        }

        if let Some(t) = config.node_threshold {
            if store.len() as u64 + new_count > t {
                open.push(Reverse(key));
                stats.generated_prev_iterations = level_start_generated;
                stats.generated_last_iteration = generated - level_start_generated;
                let frontier = open_ids(&store);
                let stats = finish(stats, &store, level);
                return Ok(AStarOutcome::ThresholdReached {
                    frontier,
                    store,
                    stats,
                });
            }
        }

        let node = &mut store.nodes[id as usize];
        node.closed = true;
        observer.on_expand(&node.state, g, node.h);
        stats.expansions += 1;
        if let Some(l) = level.as_mut() {
            l.expanded += 1;
        }

        for (cand, ch) in candidates.drain(..) {
            let cid = match cand {
                Candidate::New(s) => store.insert(StoredNode {
                    state: s,
                    g: child_g,
                    h: ch,
                    parent: Some(id),
                    closed: false,
                }),
                Candidate::Improve(cid) => {
                    let c = &mut store.nodes[cid as usize];
                    c.g = child_g;
                    c.parent = Some(id);
                    cid
                }
            };
            open.push(Reverse((f_value(child_g, ch), ch, seq, cid)));
            seq += 1;
        }
        if let Some(l) = level.as_mut() {
            l.peak_stored = store.len() as u64;
        }
    }
}

fn open_ids(store: &NodeStore) -> Vec<u32> {
    store
        .iter()
        .filter(|(_, n)| !n.closed)
        .map(|(i, _)| i)
        .collect()
}

fn audit_selection(store: &NodeStore, selected: (Cost, Cost)) {
    for (_, n) in store.iter().filter(|(_, n)| !n.closed) {
        let key = (f_value(n.g, n.h), n.h);
        assert!(
            key >= selected,
            "selected (f, h) = {selected:?} but an Open node has {key:?}"
        );
    }
}
