//! Towers of Hanoi with four pegs.
//!
//! A state stores the peg of every disc, smallest disc first. The stacking
//! order on each peg is implied, so every byte vector over `0..4` is a
//! legal, canonical state. Operator `from * 4 + to` moves the top disc of
//! peg `from` onto peg `to`; successors are enumerated by `from`, then `to`.

use crate::error::{Error, Result};
use crate::heuristics::pdb::{Abstraction, MixedRadix};
use crate::state::{GraphClass, OpId, PackedState, StateSpace};

pub const PEGS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hanoi4Instance {
    pub discs: u8,
    /// Peg of each disc, smallest first.
    pub start: Vec<u8>,
    pub goal: Vec<u8>,
}

impl Hanoi4Instance {
    /// All discs on `start_peg`, to be moved to `goal_peg`.
    pub fn tower(discs: u8, start_peg: u8, goal_peg: u8) -> Self {
        Hanoi4Instance {
            discs,
            start: vec![start_peg; discs as usize],
            goal: vec![goal_peg; discs as usize],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.discs == 0 {
            return Err(Error::Argument("Hanoi needs at least one disc".into()));
        }
        for (name, pegs) in [("start", &self.start), ("goal", &self.goal)] {
            if pegs.len() != self.discs as usize {
                return Err(Error::Argument(format!(
                    "{name} lists {} pegs for {} discs",
                    pegs.len(),
                    self.discs
                )));
            }
            if let Some(p) = pegs.iter().find(|&&p| p as usize >= PEGS) {
                return Err(Error::Argument(format!("{name} uses peg {p}, pegs are 0..3")));
            }
        }
        Ok(())
    }

    pub fn space(&self) -> Result<Hanoi4> {
        self.validate()?;
        Ok(Hanoi4 {
            discs: self.discs,
            goal: PackedState::from_bytes(&self.goal),
        })
    }

    pub fn start(&self) -> PackedState {
        PackedState::from_bytes(&self.start)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hanoi4 {
    discs: u8,
    goal: PackedState,
}

/// Index of the smallest disc on each peg.
#[inline]
fn tops(pegs: &[u8]) -> [usize; PEGS] {
    let mut top = [usize::MAX; PEGS];
    for (disc, &p) in pegs.iter().enumerate().rev() {
        top[p as usize] = disc;
    }
    top
}

impl Hanoi4 {
    pub fn discs(&self) -> usize {
        self.discs as usize
    }

    pub fn goal_state(&self) -> &PackedState {
        &self.goal
    }

    fn check(&self, s: &PackedState) -> Result<()> {
        let b = s.as_bytes();
        if b.len() != self.discs() || b.iter().any(|&p| p as usize >= PEGS) {
            return Err(Error::Encoding(format!(
                "Hanoi state {:?} does not encode {} discs on 4 pegs",
                b, self.discs
            )));
        }
        Ok(())
    }

    /// Abstraction onto the given discs (1 = smallest).
    pub fn abstraction(&self, pattern: &[u8]) -> Result<HanoiAbstraction> {
        let mut discs = Vec::with_capacity(pattern.len());
        for &d in pattern {
            if d == 0 || d > self.discs {
                return Err(Error::Argument(format!("disc {d} is not in 1..={}", self.discs)));
            }
            if discs.contains(&(d - 1)) {
                return Err(Error::Argument(format!("disc {d} repeated in pattern")));
            }
            discs.push(d - 1);
        }
        // Keep pattern order for the header but rank by increasing size so
        // abstract tops are easy to find.
        let mut by_size = discs.clone();
        by_size.sort_unstable();
        Ok(HanoiAbstraction {
            discs: self.discs,
            pattern: pattern.to_vec(),
            by_size,
            goal: self.goal.as_bytes().to_vec(),
            radix: MixedRadix::uniform(PEGS as u64, pattern.len()),
        })
    }
}

impl StateSpace for Hanoi4 {
    fn graph_class(&self) -> GraphClass {
        GraphClass::UndirectedInvertible
    }

    fn operator_count(&self) -> usize {
        PEGS * PEGS
    }

    fn expand(&self, s: &PackedState, out: &mut Vec<(PackedState, OpId)>) -> Result<()> {
        self.check(s)?;
        let top = tops(s.as_bytes());
        for from in 0..PEGS {
            let disc = top[from];
            if disc == usize::MAX {
                continue;
            }
            for to in 0..PEGS {
                if to != from && (top[to] == usize::MAX || top[to] > disc) {
                    let mut next = s.clone();
                    next.bytes_mut()[disc] = to as u8;
                    out.push((next, OpId((from * PEGS + to) as u32)));
                }
            }
        }
        Ok(())
    }

    fn inverse_operator(&self, op: OpId) -> Result<Option<OpId>> {
        let (from, to) = (op.0 as usize / PEGS, op.0 as usize % PEGS);
        if from >= PEGS || from == to {
            return Err(Error::Argument(format!("unknown operator id {}", op.0)));
        }
        Ok(Some(OpId((to * PEGS + from) as u32)))
    }

    fn describe(&self, s: &PackedState) -> String {
        s.as_bytes()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join("")
    }
}

pub struct HanoiAbstraction {
    discs: u8,
    pattern: Vec<u8>,
    /// Zero-based pattern discs, smallest first; digit `i` is the peg of
    /// `by_size[i]`.
    by_size: Vec<u8>,
    goal: Vec<u8>,
    radix: MixedRadix,
}

impl Abstraction for HanoiAbstraction {
    fn domain_id(&self) -> String {
        let goal: String = self.goal.iter().map(|p| p.to_string()).collect();
        format!("hanoi4-{}-goal{}", self.discs, goal)
    }

    fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    fn size(&self) -> u64 {
        self.radix.size()
    }

    fn rank(&self, s: &PackedState) -> usize {
        let b = s.as_bytes();
        let mut rank = 0u64;
        for (i, &d) in self.by_size.iter().enumerate() {
            rank += b[d as usize] as u64 * self.radix.weight(i);
        }
        rank as usize
    }

    fn goal_ranks(&self) -> Vec<usize> {
        let digits: Vec<u64> = self
            .by_size
            .iter()
            .map(|&d| self.goal[d as usize] as u64)
            .collect();
        vec![self.radix.rank(&digits) as usize]
    }

    fn neighbors(&self, rank: usize, out: &mut Vec<usize>) {
        let digits = self.radix.unrank(rank as u64);
        let pegs: Vec<u8> = digits.iter().map(|&p| p as u8).collect();
        let top = tops(&pegs);
        for from in 0..PEGS {
            let i = top[from];
            if i == usize::MAX {
                continue;
            }
            for to in 0..PEGS {
                if to != from && (top[to] == usize::MAX || top[to] > i) {
                    let w = self.radix.weight(i);
                    out.push((rank as u64 - from as u64 * w + to as u64 * w) as usize);
                }
            }
        }
    }
}
