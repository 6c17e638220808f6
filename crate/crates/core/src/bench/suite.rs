//! Suite files: one line per instance source.
//!
//! ```text
//! # source                algorithms                 options
//! gen:tile:3x3:walk=30    astar,bfida,hybrid-inf     count=20 seed=7
//! figure1                 hybrid-inf
//! puzzles/korf01.inst     all                        heuristic=pdb:1,2,3,4,5 threshold=200000
//! ```
//!
//! `all` expands to astar, bfida, hybrid-inf and hybrid-4. Relative paths
//! are resolved against the suite file's directory.

use std::path::Path;

use super::{Algorithm, InstanceSource, RunRequest};
use crate::domains::generate::{generate_instances, GenSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteEntry {
    pub line: usize,
    pub source: InstanceSource,
    pub algorithms: Vec<Algorithm>,
    pub heuristic: Option<String>,
    pub threshold: Option<u64>,
    /// Number of generated instances (generator sources only).
    pub count: usize,
    pub seed: Option<u64>,
}

pub fn parse_suite(text: &str, base_dir: Option<&Path>) -> Result<Vec<SuiteEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        // `#` inside a token selects a generated instance; a comment
        // starts at a `#` that begins a token.
        let content = strip_comment(raw);
        let mut tokens = content.split_whitespace();
        let Some(src) = tokens.next() else { continue };
        let algs = tokens
            .next()
            .ok_or_else(|| Error::parse(line, "missing algorithm list"))?;
        let algorithms = if algs == "all" {
            Algorithm::ALL_DEFAULT.to_vec()
        } else {
            algs.split(',')
                .map(|a| a.parse().map_err(|e: Error| Error::parse(line, e.to_string())))
                .collect::<Result<Vec<_>>>()?
        };
        let mut source = InstanceSource::parse(src);
        if let (InstanceSource::File(p), Some(base)) = (&source, base_dir) {
            if p.is_relative() {
                source = InstanceSource::File(base.join(p));
            }
        }
        let mut entry = SuiteEntry {
            line,
            source,
            algorithms,
            heuristic: None,
            threshold: None,
            count: 1,
            seed: None,
        };
        for tok in tokens {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("expected key=value, found `{tok}`")))?;
            let num = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| Error::parse(line, format!("`{k}` needs a number, found `{v}`")))
            };
            match k {
                "heuristic" => entry.heuristic = Some(v.to_string()),
                "threshold" => entry.threshold = Some(num(v)?),
                "count" => entry.count = num(v)? as usize,
                "seed" => entry.seed = Some(num(v)?),
                _ => return Err(Error::parse(line, format!("unknown option `{k}`"))),
            }
        }
        if entry.count != 1 && !matches!(entry.source, InstanceSource::Generated { .. }) {
            return Err(Error::parse(line, "count= applies to generated instances only"));
        }
        out.push(entry);
    }
    Ok(out)
}

fn strip_comment(raw: &str) -> &str {
    let mut end = raw.len();
    let mut prev_ws = true;
    for (i, c) in raw.char_indices() {
        if c == '#' && prev_ws {
            end = i;
            break;
        }
        prev_ws = c.is_whitespace();
    }
    &raw[..end]
}

impl SuiteEntry {
    /// The run requests of this entry: instances in order, and for each
    /// instance the algorithms in order.
    pub fn requests(&self, domain: Option<&str>, default_seed: u64) -> Result<Vec<RunRequest>> {
        let seed = self.seed.unwrap_or(default_seed);
        let instances = match &self.source {
            InstanceSource::Generated { spec, index } if self.count != 1 || *index == 0 => {
                let g = GenSpec::parse(spec)?;
                generate_instances(&g, self.count, seed)?
                    .into_iter()
                    .map(|g| (g.id, g.spec))
                    .collect()
            }
            other => vec![other.load(domain, seed)?],
        };
        let mut out = Vec::new();
        for (id, inst) in instances {
            for &alg in &self.algorithms {
                let mut r = RunRequest::new(id.clone(), inst.clone(), alg);
                if let Some(h) = &self.heuristic {
                    r.heuristic = h.clone();
                }
                r.node_threshold = self.threshold;
                out.push(r);
            }
        }
        Ok(out)
    }
}
