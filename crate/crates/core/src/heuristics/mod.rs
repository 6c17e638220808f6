//! Admissible, consistent heuristics.

pub mod pdb;

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::domains::Domain;
use crate::error::{Error, Result};
use crate::state::{Cost, PackedState, INFINITE};

pub use pdb::{build_pdb, PatternDatabase};

/// Lower bound on the remaining cost to a goal; [`INFINITE`] proves the
/// state is a dead end.
pub trait Heuristic {
    fn evaluate(&self, s: &PackedState) -> Cost;
}

impl<T: Heuristic + ?Sized> Heuristic for &T {
    fn evaluate(&self, s: &PackedState) -> Cost {
        (**self).evaluate(s)
    }
}

/// Sum of tile distances to their goal cells.
#[derive(Clone, Debug)]
pub struct Manhattan {
    cells: usize,
    /// `dist[tile * cells + pos]`
    dist: Vec<u8>,
}

impl Manhattan {
    pub fn new(width: usize, height: usize) -> Self {
        let cells = width * height;
        let mut dist = vec![0u8; cells * cells];
        for tile in 1..cells {
            let goal = tile - 1;
            for pos in 0..cells {
                let d = (goal / width).abs_diff(pos / width) + (goal % width).abs_diff(pos % width);
                dist[tile * cells + pos] = d as u8;
            }
        }
        Manhattan { cells, dist }
    }
}

impl Heuristic for Manhattan {
    #[inline]
    fn evaluate(&self, s: &PackedState) -> Cost {
        s.as_bytes()
            .iter()
            .enumerate()
            .map(|(pos, &t)| self.dist[t as usize * self.cells + pos] as Cost)
            .sum()
    }
}

#[derive(Clone)]
pub enum HeuristicHandle {
    Zero,
    Manhattan(Arc<Manhattan>),
    Pdb(Arc<PatternDatabase>),
    /// Per-vertex values of an explicit graph.
    VertexTable(Arc<[Cost]>),
    MaxOf(Vec<HeuristicHandle>),
}

impl Heuristic for HeuristicHandle {
    fn evaluate(&self, s: &PackedState) -> Cost {
        match self {
            HeuristicHandle::Zero => 0,
            HeuristicHandle::Manhattan(m) => m.evaluate(s),
            HeuristicHandle::Pdb(p) => p.lookup(s),
            HeuristicHandle::VertexTable(t) => {
                let b: [u8; 4] = s.as_bytes().try_into().unwrap_or([0xff; 4]);
                t.get(u32::from_le_bytes(b) as usize).copied().unwrap_or(INFINITE)
            }
            HeuristicHandle::MaxOf(hs) => hs.iter().map(|h| h.evaluate(s)).max().unwrap_or(0),
        }
    }
}

/// Evaluates `h` on `s`.
pub fn evaluate(h: &HeuristicHandle, s: &PackedState) -> Cost {
    h.evaluate(s)
}

impl fmt::Display for HeuristicHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeuristicHandle::Zero => f.write_str("zero"),
            HeuristicHandle::Manhattan(_) => f.write_str("manhattan"),
            HeuristicHandle::Pdb(p) => {
                let v: Vec<String> = p.pattern().iter().map(|x| x.to_string()).collect();
                write!(f, "pdb:{}", v.join(","))
            }
            HeuristicHandle::VertexTable(_) => f.write_str("graph"),
            HeuristicHandle::MaxOf(hs) => {
                let v: Vec<String> = hs.iter().map(|h| h.to_string()).collect();
                write!(f, "max:{}", v.join("+"))
            }
        }
    }
}

impl fmt::Debug for HeuristicHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeuristicHandle({self})")
    }
}

impl HeuristicHandle {
    /// Builds a heuristic from its textual form:
    /// `zero`, `manhattan`, `graph`, `pdb:1,2,3`, `max:<h>+<h>+..`, or
    /// `default` for the domain's standard choice.
    ///
    /// Only heuristics that are consistent for the domain are accepted.
    pub fn from_spec(spec: &str, domain: &Domain, cache_dir: Option<&Path>) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("max:") {
            let parts = rest
                .split('+')
                .map(|p| Self::from_spec(p, domain, cache_dir))
                .collect::<Result<Vec<_>>>()?;
            return Ok(HeuristicHandle::MaxOf(parts));
        }
        if let Some(rest) = spec.strip_prefix("pdb:") {
            let pattern = rest
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Argument(format!("bad pattern variable `{t}`")))
                })
                .collect::<Result<Vec<u8>>>()?;
            let pdb = PatternDatabase::cached(
                domain.abstraction(&pattern)?,
                cache_dir,
                pdb::DEFAULT_ENTRY_BUDGET,
            )?;
            return Ok(HeuristicHandle::Pdb(pdb));
        }
        match (spec, domain) {
            ("zero", _) => Ok(HeuristicHandle::Zero),
            ("manhattan", Domain::Tile(t)) => Ok(HeuristicHandle::Manhattan(Arc::new(
                Manhattan::new(t.width(), t.height()),
            ))),
            ("graph", Domain::Graph(g)) => Ok(HeuristicHandle::VertexTable(
                g.heuristic_values().to_vec().into(),
            )),
            ("default", _) => Self::from_spec(&default_spec(domain), domain, cache_dir),
            _ => Err(Error::Argument(format!(
                "heuristic `{spec}` is not available for the {} domain",
                domain.name()
            ))),
        }
    }
}

/// The heuristic used when none is requested.
pub fn default_spec(domain: &Domain) -> String {
    let list = |v: Vec<usize>| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match domain {
        Domain::Tile(t) if t.cells() <= 9 => "manhattan".into(),
        Domain::Tile(t) => {
            let k = (t.cells() - 1).min(6);
            format!("max:manhattan+pdb:{}", list((1..=k).collect()))
        }
        Domain::Hanoi(h) => {
            let d = h.discs();
            let k = d.div_ceil(2).min(10);
            format!("pdb:{}", list((d - k + 1..=d).collect()))
        }
        Domain::Pancake(p) => {
            let n = p.n();
            let k = n.div_ceil(2).min(5);
            format!("pdb:{}", list((n - k + 1..=n).collect()))
        }
        Domain::Graph(_) => "graph".into(),
    }
}
