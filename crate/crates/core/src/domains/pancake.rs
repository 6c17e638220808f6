//! The pancake problem: sort a permutation of `1..=n` by prefix reversals.
//! Operator `k - 2` flips the top `k` pancakes, for `k` in `2..=n`.

use crate::error::{Error, Result};
use crate::heuristics::pdb::{Abstraction, MixedRadix};
use crate::state::{check_op, GraphClass, OpId, PackedState, StateSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PancakeInstance {
    pub start: Vec<u8>,
}

impl PancakeInstance {
    pub fn n(&self) -> usize {
        self.start.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if !(2..=64).contains(&n) {
            return Err(Error::Argument(format!("pancake stack of size {n} unsupported")));
        }
        let mut seen = vec![false; n + 1];
        for &p in &self.start {
            if p == 0 || p as usize > n || seen[p as usize] {
                return Err(Error::Argument(format!(
                    "start must be a permutation of 1..={n}"
                )));
            }
            seen[p as usize] = true;
        }
        Ok(())
    }

    pub fn space(&self) -> Result<Pancake> {
        self.validate()?;
        Pancake::new(self.n() as u8)
    }

    pub fn start(&self) -> PackedState {
        PackedState::from_bytes(&self.start)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pancake {
    n: u8,
}

impl Pancake {
    pub fn new(n: u8) -> Result<Self> {
        if !(2..=64).contains(&n) {
            return Err(Error::Argument(format!("pancake stack of size {n} unsupported")));
        }
        Ok(Pancake { n })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn goal_state(&self) -> PackedState {
        PackedState::from((1..=self.n).collect::<Vec<u8>>())
    }

    pub fn abstraction(&self, pattern: &[u8]) -> Result<PancakeAbstraction> {
        let n = self.n();
        let mut slot = vec![u8::MAX; n + 1];
        for (i, &p) in pattern.iter().enumerate() {
            if p == 0 || p as usize > n {
                return Err(Error::Argument(format!("pancake {p} is not in 1..={n}")));
            }
            if slot[p as usize] != u8::MAX {
                return Err(Error::Argument(format!("pancake {p} repeated in pattern")));
            }
            slot[p as usize] = i as u8;
        }
        Ok(PancakeAbstraction {
            n,
            pattern: pattern.to_vec(),
            slot,
            radix: MixedRadix::uniform(n as u64, pattern.len()),
        })
    }
}

impl StateSpace for Pancake {
    fn graph_class(&self) -> GraphClass {
        GraphClass::UndirectedInvertible
    }

    fn operator_count(&self) -> usize {
        self.n() - 1
    }

    fn expand(&self, s: &PackedState, out: &mut Vec<(PackedState, OpId)>) -> Result<()> {
        if s.len() != self.n() {
            return Err(Error::Encoding(format!(
                "pancake state has {} entries, expected {}",
                s.len(),
                self.n
            )));
        }
        for k in 2..=self.n() {
            let mut next = s.clone();
            next.bytes_mut()[..k].reverse();
            out.push((next, OpId(k as u32 - 2)));
        }
        Ok(())
    }

    fn inverse_operator(&self, op: OpId) -> Result<Option<OpId>> {
        check_op(op, self.operator_count())?;
        Ok(Some(op))
    }

    fn describe(&self, s: &PackedState) -> String {
        s.as_bytes()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Keeps the positions of the pattern pancakes only.
pub struct PancakeAbstraction {
    n: usize,
    pattern: Vec<u8>,
    slot: Vec<u8>,
    radix: MixedRadix,
}

impl Abstraction for PancakeAbstraction {
    fn domain_id(&self) -> String {
        format!("pancake-{}", self.n)
    }

    fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    fn size(&self) -> u64 {
        self.radix.size()
    }

    fn rank(&self, s: &PackedState) -> usize {
        let mut rank = 0u64;
        for (pos, &p) in s.as_bytes().iter().enumerate() {
            let i = self.slot[p as usize];
            if i != u8::MAX {
                rank += pos as u64 * self.radix.weight(i as usize);
            }
        }
        rank as usize
    }

    fn goal_ranks(&self) -> Vec<usize> {
        let digits: Vec<u64> = self.pattern.iter().map(|&p| p as u64 - 1).collect();
        vec![self.radix.rank(&digits) as usize]
    }

    fn neighbors(&self, rank: usize, out: &mut Vec<usize>) {
        let digits = self.radix.unrank(rank as u64);
        for k in 2..=self.n as u64 {
            let mut next = 0u64;
            for (i, &p) in digits.iter().enumerate() {
                let q = if p < k { k - 1 - p } else { p };
                next += q * self.radix.weight(i);
            }
            if next as usize != rank {
                out.push(next as usize);
            }
        }
    }
}
