//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Hanoi4Instance, InstanceSpec, PancakeInstance, SlidingTile, SlidingTileInstance};
use crate::error::{Error, Result};
use crate::state::{OpId, StateSpace};

/// What to generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenSpec {
    /// Random walk of `walk` blank moves from the goal, never undoing the
    /// previous move. Always parity-solvable.
    Tile { width: u8, height: u8, walk: u32 },
    /// Random peg for every disc, goal tower on peg 3.
    Hanoi { discs: u8 },
    /// Uniformly random permutation.
    Pancake { n: u8 },
}

impl GenSpec {
    /// Parses `tile:3x3:walk=30`, `hanoi4:discs=5`, `pancake:n=7`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("bad generator spec `{s}`"));
        let mut parts = s.split(':');
        let domain = parts.next().ok_or_else(bad)?;
        let mut kv = std::collections::BTreeMap::new();
        let mut dims = None;
        for p in parts {
            if let Some((k, v)) = p.split_once('=') {
                kv.insert(k, v.parse::<u32>().map_err(|_| bad())?);
            } else if let Some((w, h)) = p.split_once('x') {
                dims = Some((
                    w.parse::<u8>().map_err(|_| bad())?,
                    h.parse::<u8>().map_err(|_| bad())?,
                ));
            } else {
                return Err(bad());
            }
        }
        let get = |k: &str| kv.get(k).copied().ok_or_else(bad);
        let spec = match domain {
            "tile" => {
                let (width, height) = dims.unwrap_or((3, 3));
                GenSpec::Tile {
                    width,
                    height,
                    walk: get("walk")?,
                }
            }
            "hanoi4" | "hanoi" => GenSpec::Hanoi {
                discs: u8::try_from(get("discs")?).map_err(|_| bad())?,
            },
            "pancake" => GenSpec::Pancake {
                n: u8::try_from(get("n")?).map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        match *self {
            GenSpec::Tile { width, height, .. } => SlidingTile::new(width, height).map(|_| ()),
            GenSpec::Hanoi { discs } if discs == 0 || discs > 24 => {
                Err(Error::Argument(format!("unsupported disc count {discs}")))
            }
            GenSpec::Pancake { n } if !(2..=64).contains(&n) => {
                Err(Error::Argument(format!("unsupported pancake count {n}")))
            }
            _ => Ok(()),
        }
    }

    fn label(&self) -> String {
        match self {
            GenSpec::Tile { width, height, walk } => format!("tile{width}x{height}-w{walk}"),
            GenSpec::Hanoi { discs } => format!("hanoi4-d{discs}"),
            GenSpec::Pancake { n } => format!("pancake-n{n}"),
        }
    }
}

/// A generated instance and its id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub id: String,
    pub spec: InstanceSpec,
}

/// Deterministic instance set: the same `(spec, count, seed)` always yields
/// the same instances.
pub fn generate_instances(spec: &GenSpec, count: usize, seed: u64) -> Result<Vec<Generated>> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let inst = match *spec {
            GenSpec::Tile { width, height, walk } => {
                InstanceSpec::Tile(random_walk_tile(width, height, walk, &mut rng)?)
            }
            GenSpec::Hanoi { discs } => InstanceSpec::Hanoi(Hanoi4Instance {
                discs,
                start: (0..discs).map(|_| rng.gen_range(0..4)).collect(),
                goal: vec![3; discs as usize],
            }),
            GenSpec::Pancake { n } => {
                let mut start: Vec<u8> = (1..=n).collect();
                start.shuffle(&mut rng);
                InstanceSpec::Pancake(PancakeInstance { start })
            }
        };
        out.push(Generated {
            id: format!("{}-s{seed}-{i:04}", spec.label()),
            spec: inst,
        });
    }
    Ok(out)
}

fn random_walk_tile(
    width: u8,
    height: u8,
    walk: u32,
    rng: &mut ChaCha8Rng,
) -> Result<SlidingTileInstance> {
    let space = SlidingTile::new(width, height)?;
    let mut state = space.goal_state();
    let mut last: Option<OpId> = None;
    let mut succ = Vec::new();
    for _ in 0..walk {
        succ.clear();
        space.expand(&state, &mut succ)?;
        let undo = last.map(|op| OpId(op.0 ^ 1));
        succ.retain(|(_, op)| Some(*op) != undo);
        let (next, op) = succ.swap_remove(rng.gen_range(0..succ.len()));
        state = next;
        last = Some(op);
    }
    Ok(SlidingTileInstance {
        width,
        height,
        tiles: state.as_bytes().to_vec(),
    })
}
