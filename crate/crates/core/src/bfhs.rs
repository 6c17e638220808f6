//! Breadth-first heuristic search: a cost-bounded breadth-first search
//! that keeps only a window of BFS layers for duplicate detection.
//!
//! Undirected spaces keep the expanding layer and the layer being filled;
//! each stored node remembers which operators lead back to a parent so
//! those are never applied. Directed spaces keep the previous layer as
//! well. A call may be seeded with nodes at several depths: seeds of depth
//! `d` join layer `d` ahead of the children generated from layer `d - 1`.
//! Optionally one layer is frozen as a relay so that every deeper node
//! knows which relay node it descends from.

use indexmap::IndexMap;
use rustc_hash::{FxBuildHasher, FxHashMap, FxHashSet};

use crate::astar::{NoObserver, NodeStore, SearchObserver};
use crate::error::{Error, Result};
use crate::heuristics::Heuristic;
use crate::state::{f_value, Cost, GoalTest, GraphClass, OpId, PackedState, StateSpace, INFINITE};
use crate::stats::Budget;

const NO_RELAY: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfhsSeed {
    pub state: PackedState,
    /// Absolute depth (= g) of the seed.
    pub g: Cost,
    /// Frontier id reported back for nodes descending from this seed.
    pub origin: u32,
}

#[derive(Clone, Debug)]
pub struct BfhsCall<'a> {
    pub bound: Cost,
    pub seeds: Vec<BfhsSeed>,
    /// Absolute depth of the layer to keep as relay layer.
    pub relay_depth: Option<Cost>,
    /// Nodes of an earlier A* phase; a node is pruned when this store holds
    /// its state with a `g` no larger than the node's.
    pub external_store: Option<&'a NodeStore>,
    pub budget: Budget,
    /// Keep a full expansion history and count repeated expansions.
    pub audit: bool,
}

impl<'a> BfhsCall<'a> {
    pub fn new(bound: Cost, seeds: Vec<BfhsSeed>) -> Self {
        BfhsCall {
            bound,
            seeds,
            relay_depth: None,
            external_store: None,
            budget: Budget::unlimited(),
            audit: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CallStats {
    pub generated: u64,
    pub expanded: u64,
    pub peak_stored: u64,
    pub peak_layers: u32,
    pub heuristic_evaluations: u64,
    pub audit_violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelayNode {
    pub state: PackedState,
    pub depth: Cost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BfhsOutcome {
    Solved {
        goal: PackedState,
        cost: Cost,
        origin: u32,
        relay: Option<RelayNode>,
        stats: CallStats,
    },
    /// No goal within the bound. `next_f` is the smallest f among pruned
    /// nodes, or [`INFINITE`] when nothing was pruned.
    Failed { next_f: Cost, stats: CallStats },
    BudgetExceeded { stats: CallStats },
}

impl BfhsOutcome {
    pub fn stats(&self) -> &CallStats {
        match self {
            BfhsOutcome::Solved { stats, .. }
            | BfhsOutcome::Failed { stats, .. }
            | BfhsOutcome::BudgetExceeded { stats } => stats,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayerNode {
    pub origin: u32,
    relay: u32,
    /// Operators (as bits) that would regenerate a parent.
    blocked: u64,
}

impl LayerNode {
    pub fn new(origin: u32) -> Self {
        LayerNode {
            origin,
            relay: NO_RELAY,
            blocked: 0,
        }
    }

    pub fn relay_index(&self) -> Option<u32> {
        (self.relay != NO_RELAY).then_some(self.relay)
    }
}

type Layer = IndexMap<PackedState, LayerNode, FxBuildHasher>;

/// Where a duplicate was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerHit {
    Previous,
    Current,
    Next,
    Relay,
}

#[derive(Clone, Debug)]
pub struct RelayLayer {
    pub depth: Cost,
    pub states: Vec<PackedState>,
}

/// Handle returned when a relay layer is scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelayHandle {
    pub depth: Cost,
}

/// The live window of BFS layers: one map per layer, keyed by state.
#[derive(Debug)]
pub struct LayerStore {
    class: GraphClass,
    depth: Cost,
    previous: Layer,
    current: Layer,
    next: Layer,
    relay_target: Option<Cost>,
    relay: Option<RelayLayer>,
    peak_layers: u32,
    peak_stored: u64,
}

impl LayerStore {
    /// Empty store whose current layer sits at `depth`.
    pub fn new(class: GraphClass, depth: Cost) -> Self {
        LayerStore {
            class,
            depth,
            previous: Layer::default(),
            current: Layer::default(),
            next: Layer::default(),
            relay_target: None,
            relay: None,
            peak_layers: 0,
            peak_stored: 0,
        }
    }

    pub fn depth(&self) -> Cost {
        self.depth
    }

    /// Arranges for the layer at `depth` to be kept once expansion reaches
    /// it. Fails if that depth has already been passed.
    pub fn schedule_relay(&mut self, depth: Cost) -> Result<RelayHandle> {
        if depth < self.depth || (depth == self.depth && self.relay.is_some()) {
            return Err(Error::State(format!(
                "relay depth {depth} already passed (current depth {})",
                self.depth
            )));
        }
        self.relay_target = Some(depth);
        if depth == self.depth {
            self.freeze_current();
        }
        Ok(RelayHandle { depth })
    }

    pub fn relay(&self) -> Option<&RelayLayer> {
        self.relay.as_ref()
    }

    pub fn resident_layers(&self) -> u32 {
        [&self.previous, &self.current, &self.next]
            .iter()
            .filter(|l| !l.is_empty())
            .count() as u32
            + u32::from(self.relay.is_some())
    }

    pub fn stored(&self) -> u64 {
        (self.previous.len()
            + self.current.len()
            + self.next.len()
            + self.relay.as_ref().map_or(0, |r| r.states.len())) as u64
    }

    pub fn peak_layers(&self) -> u32 {
        self.peak_layers
    }

    pub fn peak_stored(&self) -> u64 {
        self.peak_stored
    }

    fn note_peak(&mut self) {
        self.peak_layers = self.peak_layers.max(self.resident_layers());
        self.peak_stored = self.peak_stored.max(self.stored());
    }

    /// Finds `s` in the live window. The relay layer is not searched: it
    /// only holds states that are also in, or behind, the window.
    pub fn lookup(&self, s: &PackedState) -> Option<LayerHit> {
        if self.next.contains_key(s) {
            Some(LayerHit::Next)
        } else if self.current.contains_key(s) {
            Some(LayerHit::Current)
        } else if self.class == GraphClass::Directed && self.previous.contains_key(s) {
            Some(LayerHit::Previous)
        } else {
            None
        }
    }

    pub fn insert_current(&mut self, s: PackedState, node: LayerNode) -> bool {
        if self.lookup(&s).is_some() {
            return false;
        }
        self.current.insert(s, node);
        true
    }

    pub fn insert_next(&mut self, s: PackedState, node: LayerNode) -> bool {
        if self.lookup(&s).is_some() {
            return false;
        }
        self.next.insert(s, node);
        true
    }

    pub fn current_len(&self) -> usize {
        self.current.len()
    }

    fn current_entry(&self, i: usize) -> (&PackedState, &LayerNode) {
        self.current.get_index(i).expect("index in range")
    }

    /// Moves the window one layer deeper, discarding the oldest layer.
    pub fn advance(&mut self) {
        self.note_peak();
        let filled = std::mem::take(&mut self.next);
        let old = std::mem::replace(&mut self.current, filled);
        if self.class == GraphClass::Directed {
            self.previous = old;
        }
        self.depth += 1;
        if self.relay_target == Some(self.depth) {
            self.freeze_current();
        }
    }

    fn freeze_current(&mut self) {
        let states = self
            .current
            .iter_mut()
            .enumerate()
            .map(|(i, (s, n))| {
                n.relay = i as u32;
                s.clone()
            })
            .collect();
        self.relay = Some(RelayLayer {
            depth: self.depth,
            states,
        });
    }
}

/// Verdict of [`duplicate_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DuplicateVerdict {
    Keep,
    /// The operator undoes one that produced the parent.
    ParentRegeneration,
    InWindow(LayerHit),
    /// The A*-phase store holds the state with `g` no larger.
    DominatedByStore,
}

/// A freshly generated node, one layer below the current one.
pub struct DuplicateCandidate<'s> {
    pub state: &'s PackedState,
    pub g: Cost,
    pub op: OpId,
    /// Operators blocked at the parent.
    pub parent_blocked: u64,
    /// Bit of the operator that would lead back to the parent.
    pub inverse_bit: u64,
}

/// Duplicate detection for one generated node. A hit in the layer being
/// filled records the inverse operator there, so the stored copy never
/// regenerates this parent either.
pub fn duplicate_check(
    layers: &mut LayerStore,
    external: Option<&NodeStore>,
    cand: &DuplicateCandidate<'_>,
) -> DuplicateVerdict {
    if layers.class == GraphClass::UndirectedInvertible
        && cand.op.0 < 64
        && cand.parent_blocked & (1u64 << cand.op.0) != 0
    {
        return DuplicateVerdict::ParentRegeneration;
    }
    if let Some(hit) = layers.lookup(cand.state) {
        if hit == LayerHit::Next {
            if let Some(n) = layers.next.get_mut(cand.state) {
                n.blocked |= cand.inverse_bit;
            }
        }
        return DuplicateVerdict::InWindow(hit);
    }
    if let Some(store) = external {
        if store.g_of(cand.state).is_some_and(|g| g <= cand.g) {
            return DuplicateVerdict::DominatedByStore;
        }
    }
    DuplicateVerdict::Keep
}

pub fn run_bfhs<S, H>(space: &S, h: &H, call: &BfhsCall<'_>, goal: &GoalTest) -> Result<BfhsOutcome>
where
    S: StateSpace + ?Sized,
    H: Heuristic + ?Sized,
{
    run_bfhs_observed(space, h, call, goal, &mut NoObserver)
}

pub fn run_bfhs_observed<S, H>(
    space: &S,
    h: &H,
    call: &BfhsCall<'_>,
    goal: &GoalTest,
    observer: &mut dyn SearchObserver,
) -> Result<BfhsOutcome>
where
    S: StateSpace + ?Sized,
    H: Heuristic + ?Sized,
{
    let class = space.graph_class();
    let mut stats = CallStats::default();
    if call.seeds.is_empty() {
        return Err(Error::Argument("BFHS call without seeds".into()));
    }

    // Seeds: bound check, goal test, grouping by depth.
    let mut seed_h = Vec::with_capacity(call.seeds.len());
    {
        let mut seen = FxHashSet::default();
        for s in &call.seeds {
            let hv = h.evaluate(&s.state);
            stats.heuristic_evaluations += 1;
            if f_value(s.g, hv) > call.bound {
                return Err(Error::Argument(format!(
                    "seed with f = {} exceeds bound {}",
                    f_value(s.g, hv),
                    call.bound
                )));
            }
            if !seen.insert(&s.state) {
                return Err(Error::Argument("duplicate seed state".into()));
            }
            seed_h.push(hv);
        }
    }
    let mut order: Vec<usize> = (0..call.seeds.len()).collect();
    order.sort_by_key(|&i| call.seeds[i].g);
    let first_depth = call.seeds[order[0]].g;

    let inverse_bits: Vec<u64> = match class {
        GraphClass::UndirectedInvertible => {
            if space.operator_count() > 64 {
                return Err(Error::Argument(
                    "layered search supports at most 64 operators on undirected spaces".into(),
                ));
            }
            (0..space.operator_count())
                .map(|op| {
                    Ok(match space.inverse_operator(OpId(op as u32)) {
                        Ok(Some(inv)) => 1u64 << inv.0,
                        Ok(None) => {
                            return Err(Error::Argument(format!(
                                "operator {op} has no inverse in an undirected space"
                            )))
                        }
                        // Ids with no operator behind them never occur.
                        Err(_) => 0,
                    })
                })
                .collect::<Result<_>>()?
        }
        GraphClass::Directed => Vec::new(),
    };

    let mut layers = LayerStore::new(class, first_depth);
    // Seeds deeper than the layer being filled, by state.
    let mut pending: FxHashMap<PackedState, Cost> = FxHashMap::default();
    let mut seed_cursor = 0;
    while seed_cursor < order.len() && call.seeds[order[seed_cursor]].g == first_depth {
        let s = &call.seeds[order[seed_cursor]];
        layers.insert_current(s.state.clone(), LayerNode::new(s.origin));
        seed_cursor += 1;
    }
    for &i in &order[seed_cursor..] {
        pending.insert(call.seeds[i].state.clone(), call.seeds[i].g);
    }
    if let Some(depth) = call.relay_depth {
        if depth >= first_depth {
            layers.schedule_relay(depth)?;
        }
    }
    layers.note_peak();

    for &i in &order {
        let s = &call.seeds[i];
        if goal.is_goal(&s.state) {
            let relay = if s.g == first_depth {
                layers
                    .current
                    .get(&s.state)
                    .and_then(|n| relay_node(&layers, n.relay))
            } else {
                None
            };
            stats.peak_stored = layers.peak_stored();
            stats.peak_layers = layers.peak_layers();
            return Ok(BfhsOutcome::Solved {
                goal: s.state.clone(),
                cost: s.g,
                origin: s.origin,
                relay,
                stats,
            });
        }
    }

    let mut history_undirected: FxHashSet<PackedState> = FxHashSet::default();
    let mut history_directed: FxHashSet<(PackedState, Cost)> = FxHashSet::default();
    let mut next_f = INFINITE;
    let mut succ = Vec::new();

    loop {
        let depth = layers.depth();
        // Seeds for the next layer go in ahead of generated children.
        while seed_cursor < order.len() && call.seeds[order[seed_cursor]].g == depth + 1 {
            let s = &call.seeds[order[seed_cursor]];
            if pending.remove(&s.state).is_some() {
                layers.insert_next(s.state.clone(), LayerNode::new(s.origin));
            }
            seed_cursor += 1;
        }

        if layers.current_len() == 0 && layers.next.is_empty() && pending.is_empty() {
            break;
        }

        let child_g = depth + 1;
        let mut i = 0;
        while i < layers.current_len() {
            if call.budget.exceeded(stats.generated) {
                stats.peak_stored = layers.peak_stored().max(layers.stored());
                stats.peak_layers = layers.peak_layers().max(layers.resident_layers());
                return Ok(BfhsOutcome::BudgetExceeded { stats });
            }
            let (state, node) = layers.current_entry(i);
            let (state, node) = (state.clone(), *node);
            i += 1;

            if call.audit {
                let repeated = match class {
                    GraphClass::UndirectedInvertible => !history_undirected.insert(state.clone()),
                    GraphClass::Directed => !history_directed.insert((state.clone(), depth)),
                };
                if repeated {
                    stats.audit_violations += 1;
                    debug_assert!(false, "state expanded twice in one BFHS call");
                }
            }
            observer.on_expand(&state, depth, 0);
            stats.expanded += 1;

            succ.clear();
            space.expand(&state, &mut succ)?;
            stats.generated += succ.len() as u64;

            for (child, op) in succ.drain(..) {
                let inverse_bit = inverse_bits.get(op.0 as usize).copied().unwrap_or(0);
                let cand = DuplicateCandidate {
                    state: &child,
                    g: child_g,
                    op,
                    parent_blocked: node.blocked,
                    inverse_bit,
                };
                // Window duplicates and parent regeneration first; the A*
                // store is consulted only after the bound and goal tests.
                match duplicate_check(&mut layers, None, &cand) {
                    DuplicateVerdict::Keep => {}
                    _ => continue,
                }
                if let Some(&sg) = pending.get(&child) {
                    if sg > child_g {
                        pending.remove(&child);
                    }
                }
                let ch = h.evaluate(&child);
                stats.heuristic_evaluations += 1;
                let f = f_value(child_g, ch);
                if f > call.bound {
                    next_f = next_f.min(f);
                    continue;
                }
                if goal.is_goal(&child) {
                    stats.peak_stored = layers.peak_stored().max(layers.stored());
                    stats.peak_layers = layers.peak_layers().max(layers.resident_layers());
                    return Ok(BfhsOutcome::Solved {
                        goal: child,
                        cost: child_g,
                        origin: node.origin,
                        relay: relay_node(&layers, node.relay),
                        stats,
                    });
                }
                if let Some(store) = call.external_store {
                    if store.g_of(&child).is_some_and(|g| g <= child_g) {
                        continue;
                    }
                }
                layers.insert_next(
                    child,
                    LayerNode {
                        origin: node.origin,
                        relay: node.relay,
                        blocked: inverse_bit,
                    },
                );
            }
        }
        layers.advance();
    }

    stats.peak_stored = layers.peak_stored();
    stats.peak_layers = layers.peak_layers();
    Ok(BfhsOutcome::Failed { next_f, stats })
}

fn relay_node(layers: &LayerStore, idx: u32) -> Option<RelayNode> {
    if idx == NO_RELAY {
        return None;
    }
    layers.relay().map(|r| RelayNode {
        state: r.states[idx as usize].clone(),
        depth: r.depth,
    })
}
