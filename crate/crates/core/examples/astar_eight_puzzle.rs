//! A* on a scrambled 8-puzzle, checked against breadth-first search.

use hybrid_search::astar::{run_astar, AStarConfig};
use hybrid_search::domains::{InstanceSpec, SlidingTileInstance};
use hybrid_search::heuristics::HeuristicHandle;
use hybrid_search::oracle::bfs_solve;
use hybrid_search::StateSpace;

fn main() -> hybrid_search::Result<()> {
    let spec = InstanceSpec::Tile(SlidingTileInstance {
        width: 3,
        height: 3,
        tiles: vec![8, 6, 7, 2, 5, 4, 3, 0, 1],
    });
    let p = spec.build()?;
    let h = HeuristicHandle::from_spec("manhattan", &p.space, None)?;
    let out = run_astar(&p.space, &h, &p.start, &p.goal, &AStarConfig::default())?;
    let sol = out.solution().expect("solvable");
    let stats = out.stats();
    println!(
        "cost {}  stored {}  generated {}  expanded {}",
        sol.cost, stats.peak_stored, stats.total_generated, stats.expansions
    );
    let bfs = bfs_solve(&p.space, &p.start, &p.goal, 1 << 20)?.unwrap();
    assert_eq!(bfs.cost, sol.cost);
    println!("breadth-first search agrees: {}", bfs.cost);
    for s in sol.states.iter().take(3) {
        println!("{}\n", p.space.describe(s));
    }
    Ok(())
}
