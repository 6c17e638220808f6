//! Sliding-tile puzzles of arbitrary rectangular size.
//!
//! A state is the board in row-major order, one byte per cell holding the
//! tile number, with 0 for the blank. The goal is `1, 2, .., N-1, 0`.
//! Operators move the blank: 0 up, 1 down, 2 left, 3 right, always
//! enumerated in that order.

use crate::error::{Error, Result};
use crate::heuristics::pdb::{Abstraction, MixedRadix};
use crate::state::{check_op, GraphClass, OpId, PackedState, StateSpace};

pub const UP: OpId = OpId(0);
pub const DOWN: OpId = OpId(1);
pub const LEFT: OpId = OpId(2);
pub const RIGHT: OpId = OpId(3);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidingTileInstance {
    pub width: u8,
    pub height: u8,
    pub tiles: Vec<u8>,
}

impl SlidingTileInstance {
    pub fn goal(width: u8, height: u8) -> Self {
        let space = SlidingTile::new(width, height).expect("valid dimensions");
        SlidingTileInstance {
            width,
            height,
            tiles: space.goal_state().as_bytes().to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let space = SlidingTile::new(self.width, self.height)?;
        let n = space.cells();
        if self.tiles.len() != n {
            return Err(Error::Argument(format!(
                "expected {n} tiles, found {}",
                self.tiles.len()
            )));
        }
        let mut seen = vec![false; n];
        for &t in &self.tiles {
            if t as usize >= n || seen[t as usize] {
                return Err(Error::Argument(format!(
                    "tiles must be a permutation of 0..{}",
                    n - 1
                )));
            }
            seen[t as usize] = true;
        }
        if !space.is_solvable(&self.tiles) {
            return Err(Error::Unsolvable(
                "tile permutation has the wrong parity".into(),
            ));
        }
        Ok(())
    }

    pub fn space(&self) -> Result<SlidingTile> {
        SlidingTile::new(self.width, self.height)
    }

    pub fn start(&self) -> PackedState {
        PackedState::from_bytes(&self.tiles)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidingTile {
    width: u8,
    height: u8,
}

impl SlidingTile {
    pub fn new(width: u8, height: u8) -> Result<Self> {
        if width < 2 || height < 2 || width as usize * height as usize > 64 {
            return Err(Error::Argument(format!(
                "unsupported board size {width}x{height}"
            )));
        }
        Ok(SlidingTile { width, height })
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn height(&self) -> usize {
        self.height as usize
    }

    pub fn cells(&self) -> usize {
        self.width() * self.height()
    }

    pub fn goal_state(&self) -> PackedState {
        let n = self.cells();
        let v: Vec<u8> = (1..n as u8).chain(std::iter::once(0)).collect();
        PackedState::from(v)
    }

    /// Solvable iff the permutation parity relative to the goal equals the
    /// parity of the blank's Manhattan distance to its goal cell.
    pub fn is_solvable(&self, tiles: &[u8]) -> bool {
        let n = tiles.len();
        // Goal cell of each tile; the blank belongs in the last cell.
        let goal_pos = |t: u8| if t == 0 { n - 1 } else { t as usize - 1 };
        let mut perm: Vec<usize> = tiles.iter().map(|&t| goal_pos(t)).collect();
        let mut swaps = 0usize;
        for i in 0..n {
            while perm[i] != i {
                let j = perm[i];
                perm.swap(i, j);
                swaps += 1;
            }
        }
        let blank = tiles.iter().position(|&t| t == 0).unwrap_or(n - 1);
        let w = self.width();
        let (br, bc) = (blank / w, blank % w);
        let (gr, gc) = ((n - 1) / w, (n - 1) % w);
        let blank_dist = br.abs_diff(gr) + bc.abs_diff(gc);
        swaps % 2 == blank_dist % 2
    }

    fn blank_of(&self, s: &PackedState) -> Result<usize> {
        let b = s.as_bytes();
        if b.len() != self.cells() {
            return Err(Error::Encoding(format!(
                "tile state has {} cells, expected {}",
                b.len(),
                self.cells()
            )));
        }
        b.iter()
            .position(|&t| t == 0)
            .ok_or_else(|| Error::Encoding("tile state has no blank".into()))
    }

    /// Target cell of the blank under `op`, if the move is legal.
    #[inline]
    fn target(&self, blank: usize, op: OpId) -> Option<usize> {
        let w = self.width();
        let (r, c) = (blank / w, blank % w);
        match op {
            UP if r > 0 => Some(blank - w),
            DOWN if r + 1 < self.height() => Some(blank + w),
            LEFT if c > 0 => Some(blank - 1),
            RIGHT if c + 1 < w => Some(blank + 1),
            _ => None,
        }
    }

    pub fn apply(&self, s: &PackedState, op: OpId) -> Result<Option<PackedState>> {
        check_op(op, 4)?;
        let blank = self.blank_of(s)?;
        Ok(self.target(blank, op).map(|t| {
            let mut next = s.clone();
            next.bytes_mut().swap(blank, t);
            next
        }))
    }

    /// Abstraction keeping only the positions of `pattern` tiles; the blank
    /// and all other tiles become indistinguishable.
    pub fn abstraction(&self, pattern: &[u8]) -> Result<TileAbstraction> {
        let n = self.cells();
        let mut slot = vec![u8::MAX; n];
        for (i, &t) in pattern.iter().enumerate() {
            if t == 0 || t as usize >= n {
                return Err(Error::Argument(format!("tile {t} is not a pattern tile")));
            }
            if slot[t as usize] != u8::MAX {
                return Err(Error::Argument(format!("tile {t} repeated in pattern")));
            }
            slot[t as usize] = i as u8;
        }
        Ok(TileAbstraction {
            width: self.width(),
            height: self.height(),
            pattern: pattern.to_vec(),
            slot,
            radix: MixedRadix::uniform(n as u64, pattern.len()),
        })
    }
}

impl StateSpace for SlidingTile {
    fn graph_class(&self) -> GraphClass {
        GraphClass::UndirectedInvertible
    }

    fn operator_count(&self) -> usize {
        4
    }

    fn expand(&self, s: &PackedState, out: &mut Vec<(PackedState, OpId)>) -> Result<()> {
        let blank = self.blank_of(s)?;
        for op in [UP, DOWN, LEFT, RIGHT] {
            if let Some(t) = self.target(blank, op) {
                let mut next = s.clone();
                next.bytes_mut().swap(blank, t);
                out.push((next, op));
            }
        }
        Ok(())
    }

    fn inverse_operator(&self, op: OpId) -> Result<Option<OpId>> {
        check_op(op, 4)?;
        Ok(Some(OpId(op.0 ^ 1)))
    }

    fn describe(&self, s: &PackedState) -> String {
        s.as_bytes()
            .chunks(self.width())
            .map(|row| {
                row.iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

pub struct TileAbstraction {
    width: usize,
    height: usize,
    pattern: Vec<u8>,
    /// Pattern index of each tile, `u8::MAX` for tiles outside the pattern.
    slot: Vec<u8>,
    radix: MixedRadix,
}

impl Abstraction for TileAbstraction {
    fn domain_id(&self) -> String {
        format!("tile-{}x{}", self.width, self.height)
    }

    fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    fn size(&self) -> u64 {
        self.radix.size()
    }

    fn rank(&self, s: &PackedState) -> usize {
        let mut rank = 0u64;
        for (cell, &t) in s.as_bytes().iter().enumerate() {
            let i = self.slot[t as usize];
            if i != u8::MAX {
                rank += cell as u64 * self.radix.weight(i as usize);
            }
        }
        rank as usize
    }

    fn goal_ranks(&self) -> Vec<usize> {
        let digits: Vec<u64> = self.pattern.iter().map(|&t| t as u64 - 1).collect();
        vec![self.radix.rank(&digits) as usize]
    }

    fn neighbors(&self, rank: usize, out: &mut Vec<usize>) {
        let digits = self.radix.unrank(rank as u64);
        let occupied: u64 = digits.iter().fold(0, |m, &p| m | (1u64 << p));
        let w = self.width;
        for (i, &p) in digits.iter().enumerate() {
            let p = p as usize;
            let (r, c) = (p / w, p % w);
            let mut targets = [usize::MAX; 4];
            if r > 0 {
                targets[0] = p - w;
            }
            if r + 1 < self.height {
                targets[1] = p + w;
            }
            if c > 0 {
                targets[2] = p - 1;
            }
            if c + 1 < w {
                targets[3] = p + 1;
            }
            for t in targets {
                if t != usize::MAX && occupied & (1u64 << t) == 0 {
                    let weight = self.radix.weight(i);
                    let next = rank as u64 - p as u64 * weight + t as u64 * weight;
                    out.push(next as usize);
                }
            }
        }
    }
}
