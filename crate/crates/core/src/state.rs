//! Domain-independent vocabulary shared by every engine: packed states,
//! search nodes, the state-space trait, goal tests and solutions.
//!
//! All spaces are unit-cost, so a node's depth and its `g` coincide. The
//! engines use `g` throughout and never track depth separately.

use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashSet;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Path costs, heuristic values and bounds. `INFINITE` marks dead ends and
/// exhausted regions.
pub type Cost = u32;

pub const INFINITE: Cost = Cost::MAX;

/// `g + h`, saturating at [`INFINITE`].
#[inline]
pub fn f_value(g: Cost, h: Cost) -> Cost {
    if h == INFINITE {
        INFINITE
    } else {
        g.saturating_add(h)
    }
}

/// Canonical byte encoding of a state. Two states are the same state iff
/// their encodings are byte-equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PackedState(SmallVec<[u8; 16]>);

impl PackedState {
    pub fn from_bytes(bytes: &[u8]) -> Self {
        PackedState(SmallVec::from_slice(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn bytes_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }
}

impl From<Vec<u8>> for PackedState {
    fn from(v: Vec<u8>) -> Self {
        PackedState(SmallVec::from_vec(v))
    }
}

impl fmt::Debug for PackedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PackedState({:?})", self.as_bytes())
    }
}

/// Identifier of an operator within one state space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpId(pub u32);

/// Whether layered duplicate detection may rely on inverse operators
/// (two live layers) or must keep a previous layer as well (three).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    UndirectedInvertible,
    Directed,
}

impl GraphClass {
    /// Number of live BFS layers needed for duplicate detection.
    pub fn live_layers(self) -> usize {
        match self {
            GraphClass::UndirectedInvertible => 2,
            GraphClass::Directed => 3,
        }
    }
}

/// Where a node came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AncestorRef {
    None,
    /// Parent in the A* node store.
    ParentLink(u32),
    /// Index of the frontier node a BFHS-phase node descends from.
    FrontierOrigin(u32),
    /// Index into a frozen relay layer.
    RelayOrigin(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchNode {
    pub state: PackedState,
    pub g: Cost,
    pub h: Cost,
    pub ancestor: AncestorRef,
}

impl SearchNode {
    pub fn new(state: PackedState, g: Cost, h: Cost, ancestor: AncestorRef) -> Self {
        SearchNode {
            state,
            g,
            h,
            ancestor,
        }
    }

    pub fn f(&self) -> Cost {
        f_value(self.g, self.h)
    }
}

/// A unit-cost state space.
///
/// `expand` must be deterministic: the same state always yields the same
/// successors in the same order, so node counts reproduce exactly.
pub trait StateSpace {
    fn graph_class(&self) -> GraphClass;

    /// Upper bound (exclusive) on operator ids.
    fn operator_count(&self) -> usize;

    /// Appends every successor of `s` together with its generating operator.
    fn expand(&self, s: &PackedState, out: &mut Vec<(PackedState, OpId)>) -> Result<()>;

    fn successors(&self, s: &PackedState) -> Result<Vec<(PackedState, OpId)>> {
        let mut out = Vec::new();
        self.expand(s, &mut out)?;
        Ok(out)
    }

    /// The operator undoing `op`, or `None` on directed spaces.
    fn inverse_operator(&self, op: OpId) -> Result<Option<OpId>>;

    /// Human-readable rendering, used in logs and the CLI.
    fn describe(&self, s: &PackedState) -> String {
        format!("{:?}", s.as_bytes())
    }
}

impl<T: StateSpace + ?Sized> StateSpace for &T {
    fn graph_class(&self) -> GraphClass {
        (**self).graph_class()
    }
    fn operator_count(&self) -> usize {
        (**self).operator_count()
    }
    fn expand(&self, s: &PackedState, out: &mut Vec<(PackedState, OpId)>) -> Result<()> {
        (**self).expand(s, out)
    }
    fn inverse_operator(&self, op: OpId) -> Result<Option<OpId>> {
        (**self).inverse_operator(op)
    }
    fn describe(&self, s: &PackedState) -> String {
        (**self).describe(s)
    }
}

/// Goal specification: a single state, a set of states, or a predicate.
#[derive(Clone)]
pub enum GoalTest {
    State(PackedState),
    Set(Arc<FxHashSet<PackedState>>),
    Predicate(Arc<dyn Fn(&PackedState) -> bool + Send + Sync>),
}

impl GoalTest {
    pub fn set<I: IntoIterator<Item = PackedState>>(states: I) -> Self {
        GoalTest::Set(Arc::new(states.into_iter().collect()))
    }

    #[inline]
    pub fn is_goal(&self, s: &PackedState) -> bool {
        match self {
            GoalTest::State(g) => g == s,
            GoalTest::Set(set) => set.contains(s),
            GoalTest::Predicate(p) => p(s),
        }
    }
}

impl fmt::Debug for GoalTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoalTest::State(s) => f.debug_tuple("State").field(s).finish(),
            GoalTest::Set(set) => f.debug_tuple("Set").field(&set.len()).finish(),
            GoalTest::Predicate(_) => f.write_str("Predicate(..)"),
        }
    }
}

/// Pure membership test against a goal specification.
pub fn goal_test_membership(goal: &GoalTest, s: &PackedState) -> bool {
    goal.is_goal(s)
}

/// An optimal path: `states[0]` is the start and `states.len() == cost + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub cost: Cost,
    pub states: Vec<PackedState>,
}

impl Solution {
    pub fn from_states(states: Vec<PackedState>) -> Self {
        let cost = states.len().saturating_sub(1) as Cost;
        Solution { cost, states }
    }

    pub fn goal(&self) -> Option<&PackedState> {
        self.states.last()
    }
}

/// Checks the path invariants of `sol` against `space`. Returns the reason
/// on failure.
pub fn validate_solution<S: StateSpace + ?Sized>(
    space: &S,
    start: &PackedState,
    goal: &GoalTest,
    sol: &Solution,
) -> std::result::Result<(), String> {
    if sol.states.len() != sol.cost as usize + 1 {
        return Err(format!(
            "path has {} states but cost {}",
            sol.states.len(),
            sol.cost
        ));
    }
    if &sol.states[0] != start {
        return Err("path does not begin at the start state".into());
    }
    let last = sol.states.last().expect("non-empty");
    if !goal.is_goal(last) {
        return Err("path does not end in a goal state".into());
    }
    let mut buf = Vec::new();
    for (i, pair) in sol.states.windows(2).enumerate() {
        buf.clear();
        space
            .expand(&pair[0], &mut buf)
            .map_err(|e| format!("step {i}: {e}"))?;
        if !buf.iter().any(|(t, _)| t == &pair[1]) {
            return Err(format!("step {i}: no legal operator connects the states"));
        }
    }
    Ok(())
}

pub(crate) fn check_op(op: OpId, count: usize) -> Result<()> {
    if (op.0 as usize) < count {
        Ok(())
    } else {
        Err(Error::Argument(format!("unknown operator id {}", op.0)))
    }
}
