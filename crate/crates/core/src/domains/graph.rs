//! Explicit directed unit-cost graphs with per-vertex heuristic values.
//!
//! A state is the vertex index as four little-endian bytes. Operator ids
//! are edge indices in declaration order; successors follow that order.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::state::{check_op, Cost, GoalTest, GraphClass, OpId, PackedState, StateSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGraphInstance {
    /// Vertex names with their heuristic values.
    pub vertices: Vec<(String, Cost)>,
    /// Directed unit-cost edges as (from, to) vertex indices.
    pub edges: Vec<(usize, usize)>,
    pub start: usize,
    pub goals: Vec<usize>,
}

impl ExplicitGraphInstance {
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|(n, _)| n == name)
    }

    /// Structural checks plus heuristic consistency: `h(u) <= 1 + h(v)` on
    /// every edge and `h = 0` on goals. Inconsistent values are rejected.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::Argument("graph has no vertices".into()));
        }
        let mut names = FxHashMap::default();
        for (i, (name, _)) in self.vertices.iter().enumerate() {
            if names.insert(name.as_str(), i).is_some() {
                return Err(Error::Argument(format!("vertex {name} declared twice")));
            }
        }
        if self.start >= n {
            return Err(Error::Argument("start vertex is not declared".into()));
        }
        if self.goals.is_empty() {
            return Err(Error::Argument("graph has no goal vertex".into()));
        }
        for &(u, v) in &self.edges {
            if u >= n || v >= n {
                return Err(Error::Argument("edge references an undeclared vertex".into()));
            }
            let (hu, hv) = (self.vertices[u].1, self.vertices[v].1);
            if hu > hv.saturating_add(1) {
                return Err(Error::Argument(format!(
                    "inconsistent heuristic on edge {} -> {}: h={} vs h={}",
                    self.vertices[u].0, self.vertices[v].0, hu, hv
                )));
            }
        }
        for &g in &self.goals {
            if g >= n {
                return Err(Error::Argument("goal vertex is not declared".into()));
            }
            if self.vertices[g].1 != 0 {
                return Err(Error::Argument(format!(
                    "goal {} has nonzero heuristic value",
                    self.vertices[g].0
                )));
            }
        }
        Ok(())
    }

    pub fn space(&self) -> Result<ExplicitGraph> {
        self.validate()?;
        let mut adjacency = vec![Vec::new(); self.vertices.len()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adjacency[u].push((v as u32, i as u32));
        }
        Ok(ExplicitGraph {
            names: self.vertices.iter().map(|(n, _)| n.clone()).collect(),
            h: self.vertices.iter().map(|&(_, h)| h).collect(),
            adjacency,
            edge_count: self.edges.len(),
        })
    }

    pub fn start(&self) -> PackedState {
        vertex_state(self.start)
    }

    pub fn goal_test(&self) -> GoalTest {
        if self.goals.len() == 1 {
            GoalTest::State(vertex_state(self.goals[0]))
        } else {
            GoalTest::set(self.goals.iter().map(|&g| vertex_state(g)))
        }
    }
}

pub fn vertex_state(index: usize) -> PackedState {
    PackedState::from_bytes(&(index as u32).to_le_bytes())
}

#[derive(Clone, Debug)]
pub struct ExplicitGraph {
    names: Vec<String>,
    h: Vec<Cost>,
    adjacency: Vec<Vec<(u32, u32)>>,
    edge_count: usize,
}

impl ExplicitGraph {
    pub fn vertex_of(&self, s: &PackedState) -> Result<usize> {
        let b: [u8; 4] = s
            .as_bytes()
            .try_into()
            .map_err(|_| Error::Encoding("graph state must be 4 bytes".into()))?;
        let v = u32::from_le_bytes(b) as usize;
        if v >= self.names.len() {
            return Err(Error::Encoding(format!("vertex index {v} out of range")));
        }
        Ok(v)
    }

    pub fn name_of(&self, s: &PackedState) -> Option<&str> {
        self.vertex_of(s).ok().map(|v| self.names[v].as_str())
    }

    pub fn state_of(&self, name: &str) -> Option<PackedState> {
        self.names.iter().position(|n| n == name).map(vertex_state)
    }

    /// Heuristic values indexed by vertex.
    pub fn heuristic_values(&self) -> &[Cost] {
        &self.h
    }
}

impl StateSpace for ExplicitGraph {
    fn graph_class(&self) -> GraphClass {
        GraphClass::Directed
    }

    fn operator_count(&self) -> usize {
        self.edge_count
    }

    fn expand(&self, s: &PackedState, out: &mut Vec<(PackedState, OpId)>) -> Result<()> {
        let v = self.vertex_of(s)?;
        for &(t, e) in &self.adjacency[v] {
            out.push((vertex_state(t as usize), OpId(e)));
        }
        Ok(())
    }

    fn inverse_operator(&self, op: OpId) -> Result<Option<OpId>> {
        check_op(op, self.edge_count)?;
        Ok(None)
    }

    fn describe(&self, s: &PackedState) -> String {
        self.name_of(s).unwrap_or("?").to_string()
    }
}

/// Stored-node threshold at which the A* phase on [`figure1_space`] stops
/// with Closed = {S, A, C, D, G} and Open = {B, E, F, H, I, J, K}.
pub const FIGURE1_THRESHOLD: u64 = 12;

/// The worked-example graph.
///
/// The first twelve vertices form the A*-phase tree (f-values in
/// parentheses): S(6) -> A(7), B(8), C(7); A -> D(7), E(8); D -> H(8),
/// I(8); C -> F(8), G(7); G -> J(8), K(8).
///
/// Below that tree the graph is extended so a bound-8 pass fails with
/// updated f-values 9 for the sets {H..K} and {E, F} and 10 for {B}:
/// every frontier vertex has one child whose f is one more than its own,
/// except B whose child is two more. H's child starts a chain that
/// reaches the goal Z at depth 9, so the optimal cost is 9 and the first
/// bound-9 call (on {H..K}) solves it.
pub fn figure1_space() -> ExplicitGraphInstance {
    let vertices: &[(&str, Cost)] = &[
        ("S", 6),
        ("A", 6),
        ("B", 7),
        ("C", 6),
        ("D", 5),
        ("E", 6),
        ("F", 6),
        ("G", 5),
        ("H", 5),
        ("I", 5),
        ("J", 5),
        ("K", 5),
        // extension below the frontier
        ("B1", 8),
        ("E1", 6),
        ("F1", 6),
        ("H1", 5),
        ("I1", 5),
        ("J1", 5),
        ("K1", 5),
        ("P1", 4),
        ("P2", 3),
        ("P3", 2),
        ("P4", 1),
        ("Z", 0),
    ];
    let edges: &[(&str, &str)] = &[
        ("S", "A"),
        ("S", "B"),
        ("S", "C"),
        ("A", "D"),
        ("A", "E"),
        ("D", "H"),
        ("D", "I"),
        ("C", "F"),
        ("C", "G"),
        ("G", "J"),
        ("G", "K"),
        ("B", "B1"),
        ("E", "E1"),
        ("F", "F1"),
        ("H", "H1"),
        ("I", "I1"),
        ("J", "J1"),
        ("K", "K1"),
        ("H1", "P1"),
        ("P1", "P2"),
        ("P2", "P3"),
        ("P3", "P4"),
        ("P4", "Z"),
    ];
    let idx = |n: &str| vertices.iter().position(|(v, _)| *v == n).unwrap();
    ExplicitGraphInstance {
        vertices: vertices.iter().map(|&(n, h)| (n.to_string(), h)).collect(),
        edges: edges.iter().map(|&(u, v)| (idx(u), idx(v))).collect(),
        start: idx("S"),
        goals: vec![idx("Z")],
    }
}
