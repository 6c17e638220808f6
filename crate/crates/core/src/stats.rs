use std::time::{Duration, Instant};

use serde::Serialize;

use crate::state::{Cost, Solution};

/// Counters for one iteration (one cost bound).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IterationStats {
    pub bound: Cost,
    pub generated: u64,
    pub expanded: u64,
    pub peak_stored: u64,
}

/// Measurements for a complete run, mirroring the result-table columns.
///
/// `total_generated` always equals the sum of the three generation buckets.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunStats {
    pub peak_stored: u64,
    pub generated_prev_iterations: u64,
    pub generated_last_iteration: u64,
    pub generated_reconstruction: u64,
    pub total_generated: u64,
    pub expansions: u64,
    pub heuristic_evaluations: u64,
    pub iterations: Vec<IterationStats>,
    /// Nodes held by the A* phase of a hybrid run (0 for other engines).
    pub phase1_stored: u64,
    /// Largest number of simultaneously resident BFHS layers, relay included.
    pub peak_resident_layers: u32,
    /// Repeated expansions caught by the BFHS audit (0 unless auditing).
    pub audit_violations: u64,
    pub wall_time: f64,
    pub solution_cost: Option<Cost>,
}

impl RunStats {
    pub(crate) fn seal(&mut self) {
        self.total_generated = self.generated_prev_iterations
            + self.generated_last_iteration
            + self.generated_reconstruction;
    }

    pub fn is_consistent(&self) -> bool {
        self.total_generated
            == self.generated_prev_iterations
                + self.generated_last_iteration
                + self.generated_reconstruction
            && self.iterations.iter().all(|it| it.peak_stored <= self.peak_stored)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Solved(Solution),
    Unsolvable,
    BudgetExceeded,
}

impl Outcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Solved(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub outcome: Outcome,
    pub stats: RunStats,
}

impl RunReport {
    pub fn solution(&self) -> Option<&Solution> {
        self.outcome.solution()
    }

    pub fn cost(&self) -> Option<Cost> {
        self.solution().map(|s| s.cost)
    }
}

/// Work limits shared by all engines. Checked before every expansion.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_generated: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn new(max_generated: Option<u64>, time_limit: Option<Duration>) -> Self {
        Budget {
            max_generated,
            deadline: time_limit.map(|d| Instant::now() + d),
        }
    }

    /// The budget left once `used` nodes have been generated elsewhere.
    pub fn after(self, used: u64) -> Self {
        Budget {
            max_generated: self.max_generated.map(|m| m.saturating_sub(used)),
            deadline: self.deadline,
        }
    }

    #[inline]
    pub fn exceeded(&self, generated: u64) -> bool {
        if let Some(max) = self.max_generated {
            if generated >= max {
                return true;
            }
        }
        matches!(self.deadline, Some(d) if Instant::now() >= d)
    }
}
