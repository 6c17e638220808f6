//! Builds an 8-puzzle pattern database and compares it with Manhattan
//! distance and exact distances.

use hybrid_search::domains::{Domain, SlidingTile};
use hybrid_search::heuristics::pdb::build_pdb;
use hybrid_search::heuristics::{Heuristic, HeuristicHandle};
use hybrid_search::oracle::distance_table;

fn main() -> hybrid_search::Result<()> {
    let tile = SlidingTile::new(3, 3)?;
    let goal = tile.goal_state();
    let space = Domain::Tile(tile);
    let pdb = build_pdb(&space, &[1, 2, 3, 4])?;
    println!("pattern {:?}: {} entries", pdb.pattern(), pdb.entries().len());

    let md = HeuristicHandle::from_spec("manhattan", &space, None)?;
    let both = HeuristicHandle::from_spec("max:manhattan+pdb:1,2,3,4+pdb:5,6,7,8", &space, None)?;
    let exact = distance_table(&space, &goal, 1 << 20)?;
    let (mut sum_md, mut sum_pdb, mut sum_max, mut sum_d) = (0u64, 0u64, 0u64, 0u64);
    for (s, &d) in &exact {
        sum_md += md.evaluate(s) as u64;
        sum_pdb += pdb.lookup(s) as u64;
        sum_max += both.evaluate(s) as u64;
        sum_d += d as u64;
    }
    let n = exact.len() as f64;
    println!("{} states, mean distance {:.2}", exact.len(), sum_d as f64 / n);
    println!("mean manhattan {:.2}", sum_md as f64 / n);
    println!("mean pdb(1-4)  {:.2}", sum_pdb as f64 / n);
    println!("mean max       {:.2}", sum_max as f64 / n);
    Ok(())
}
