//! Pattern databases built by backward breadth-first search over an
//! abstract space, plus the on-disk cache format.
//!
//! Cache file layout (all integers little-endian):
//!
//! ```text
//! magic  b"HSPDB\0" | version u16 | domain id (u16 len + utf8)
//! pattern (u16 len + bytes) | entry count u64 | entries u16 * count
//! ```

use std::collections::VecDeque;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::state::{Cost, PackedState, INFINITE};

/// Entry value for abstract states that cannot reach the abstract goal.
pub const UNREACHABLE: u16 = u16::MAX;

pub const DEFAULT_ENTRY_BUDGET: u64 = 100_000_000;

/// Environment variable naming the directory for cached pattern databases.
pub const CACHE_DIR_ENV: &str = "HYBRID_SEARCH_PDB_CACHE";

const MAGIC: &[u8; 6] = b"HSPDB\0";
const VERSION: u16 = 1;

/// Mixed-radix ranking of pattern variable assignments.
#[derive(Clone, Debug)]
pub struct MixedRadix {
    radices: Vec<u64>,
    weights: Vec<u64>,
    size: u64,
}

impl MixedRadix {
    pub fn new(radices: Vec<u64>) -> Self {
        let mut weights = Vec::with_capacity(radices.len());
        let mut w = 1u64;
        for &r in &radices {
            weights.push(w);
            w = w.saturating_mul(r);
        }
        MixedRadix {
            radices,
            weights,
            size: w,
        }
    }

    pub fn uniform(radix: u64, digits: usize) -> Self {
        Self::new(vec![radix; digits])
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    #[inline]
    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    pub fn rank(&self, digits: &[u64]) -> u64 {
        digits.iter().zip(&self.weights).map(|(d, w)| d * w).sum()
    }

    pub fn unrank(&self, mut rank: u64) -> Vec<u64> {
        self.radices
            .iter()
            .map(|&r| {
                let d = rank % r;
                rank /= r;
                d
            })
            .collect()
    }
}

/// A homomorphic abstraction of a state space. Abstract edges must be
/// symmetric (all built-in pattern spaces are undirected), so the BFS can
/// walk `neighbors` backwards from the goal.
pub trait Abstraction: Send + Sync {
    /// Identifies the concrete space, including anything that changes
    /// distances (board size, goal).
    fn domain_id(&self) -> String;
    fn pattern(&self) -> &[u8];
    fn size(&self) -> u64;
    fn rank(&self, s: &PackedState) -> usize;
    fn goal_ranks(&self) -> Vec<usize>;
    fn neighbors(&self, rank: usize, out: &mut Vec<usize>);
}

pub struct PatternDatabase {
    abstraction: Box<dyn Abstraction>,
    table: Vec<u16>,
}

impl std::fmt::Debug for PatternDatabase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PatternDatabase")
            .field("domain", &self.abstraction.domain_id())
            .field("pattern", &self.abstraction.pattern())
            .field("entries", &self.table.len())
            .finish()
    }
}

impl PatternDatabase {
    /// Fills the table by breadth-first search from the abstract goal.
    pub fn build(abstraction: Box<dyn Abstraction>, entry_budget: u64) -> Result<Self> {
        let size = abstraction.size();
        if size > entry_budget || size > u32::MAX as u64 {
            return Err(Error::Resource {
                required: size,
                budget: entry_budget.min(u32::MAX as u64),
            });
        }
        let mut table = vec![UNREACHABLE; size as usize];
        let mut queue = VecDeque::new();
        for g in abstraction.goal_ranks() {
            if table[g] == UNREACHABLE {
                table[g] = 0;
                queue.push_back(g as u32);
            }
        }
        let mut buf = Vec::new();
        while let Some(r) = queue.pop_front() {
            let d = table[r as usize];
            buf.clear();
            abstraction.neighbors(r as usize, &mut buf);
            for &n in &buf {
                if table[n] == UNREACHABLE {
                    table[n] = d + 1;
                    queue.push_back(n as u32);
                }
            }
        }
        Ok(PatternDatabase { abstraction, table })
    }

    pub fn pattern(&self) -> &[u8] {
        self.abstraction.pattern()
    }

    pub fn domain_id(&self) -> String {
        self.abstraction.domain_id()
    }

    pub fn entries(&self) -> &[u16] {
        &self.table
    }

    #[inline]
    pub fn lookup(&self, s: &PackedState) -> Cost {
        match self.table[self.abstraction.rank(s)] {
            UNREACHABLE => INFINITE,
            d => d as Cost,
        }
    }

    fn header(abstraction: &dyn Abstraction) -> Vec<u8> {
        let mut h = Vec::new();
        h.extend_from_slice(MAGIC);
        h.extend_from_slice(&VERSION.to_le_bytes());
        let id = abstraction.domain_id();
        h.extend_from_slice(&(id.len() as u16).to_le_bytes());
        h.extend_from_slice(id.as_bytes());
        let pat = abstraction.pattern();
        h.extend_from_slice(&(pat.len() as u16).to_le_bytes());
        h.extend_from_slice(pat);
        h.extend_from_slice(&abstraction.size().to_le_bytes());
        h
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut bytes = Self::header(self.abstraction.as_ref());
        bytes.reserve(self.table.len() * 2);
        for &e in &self.table {
            bytes.extend_from_slice(&e.to_le_bytes());
        }
        let tmp = path.with_extension("tmp");
        fs::File::create(&tmp)?.write_all(&bytes)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    /// Loads a table for `abstraction`, refusing files whose header does
    /// not match the abstraction exactly.
    pub fn load(abstraction: Box<dyn Abstraction>, path: &Path) -> Result<Self> {
        let mut bytes = Vec::new();
        fs::File::open(path)?.read_to_end(&mut bytes)?;
        let header = Self::header(abstraction.as_ref());
        if bytes.len() < header.len() || bytes[..header.len()] != header[..] {
            return Err(Error::State(format!(
                "{} does not hold a table for {} pattern {:?}",
                path.display(),
                abstraction.domain_id(),
                abstraction.pattern()
            )));
        }
        let body = &bytes[header.len()..];
        if body.len() as u64 != abstraction.size() * 2 {
            return Err(Error::State(format!("{} is truncated", path.display())));
        }
        let table = body
            .chunks_exact(2)
            .map(|c| u16::from_le_bytes([c[0], c[1]]))
            .collect();
        Ok(PatternDatabase { abstraction, table })
    }

    fn cache_file(dir: &Path, abstraction: &dyn Abstraction) -> PathBuf {
        let pat: Vec<String> = abstraction.pattern().iter().map(|p| p.to_string()).collect();
        dir.join(format!("{}_{}.pdb", abstraction.domain_id(), pat.join("-")))
    }

    /// Loads from the cache directory when a matching file exists, otherwise
    /// builds and writes it there. Without a cache directory this is
    /// [`PatternDatabase::build`].
    pub fn cached(
        abstraction: Box<dyn Abstraction>,
        cache_dir: Option<&Path>,
        entry_budget: u64,
    ) -> Result<Arc<Self>> {
        let Some(dir) = cache_dir else {
            return Ok(Arc::new(Self::build(abstraction, entry_budget)?));
        };
        let path = Self::cache_file(dir, abstraction.as_ref());
        if path.exists() {
            let header = Self::header(abstraction.as_ref());
            let matches = fs::File::open(&path).and_then(|mut f| {
                let mut buf = vec![0u8; header.len()];
                f.read_exact(&mut buf).map(|_| buf == header)
            });
            if matches.unwrap_or(false) {
                return Ok(Arc::new(Self::load(abstraction, &path)?));
            }
        }
        let pdb = Self::build(abstraction, entry_budget)?;
        fs::create_dir_all(dir)?;
        pdb.save(&path)?;
        Ok(Arc::new(pdb))
    }
}

/// Builds a pattern database for `space` over `pattern` with the default
/// entry budget.
pub fn build_pdb(space: &crate::domains::Domain, pattern: &[u8]) -> Result<PatternDatabase> {
    PatternDatabase::build(space.abstraction(pattern)?, DEFAULT_ENTRY_BUDGET)
}
