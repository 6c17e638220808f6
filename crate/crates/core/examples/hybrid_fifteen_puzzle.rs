//! A*+BFHS on a 15-puzzle with a small A* threshold, next to A* alone.
//!
//! The first run builds the 6-tile pattern database (a few seconds); set
//! HYBRID_SEARCH_PDB_CACHE to a directory to reuse it.

use hybrid_search::astar::{run_astar, AStarConfig};
use hybrid_search::bench::cache_dir_from_env;
use hybrid_search::domains::generate::{generate_instances, GenSpec};
use hybrid_search::heuristics::HeuristicHandle;
use hybrid_search::hybrid::{run_hybrid, HybridConfig};

fn main() -> hybrid_search::Result<()> {
    let spec = GenSpec::parse("tile:4x4:walk=60")?;
    let inst = generate_instances(&spec, 1, 7)?.remove(0);
    let p = inst.spec.build()?;
    let h = HeuristicHandle::from_spec("default", &p.space, cache_dir_from_env().as_deref())?;

    let a = run_astar(&p.space, &h, &p.start, &p.goal, &AStarConfig::default())?;
    let threshold = (a.stats().peak_stored / 10).max(1);
    let cfg = HybridConfig {
        node_threshold: threshold,
        ..Default::default()
    };
    let r = run_hybrid(&p.space, &h, &p.start, &p.goal, &cfg)?;
    println!("{}  threshold {threshold}", inst.id);
    println!("{:<8} {:>6} {:>10} {:>12}", "", "cost", "stored", "generated");
    for (name, cost, st) in [("astar", a.solution().map(|s| s.cost), a.stats()), ("hybrid", r.report.cost(), &r.report.stats)] {
        println!("{name:<8} {:>6} {:>10} {:>12}", cost.unwrap(), st.peak_stored, st.total_generated);
    }
    println!(
        "{} BFHS calls; solution passes through a frontier node at depth {}",
        r.calls.len(),
        r.origin_g.unwrap_or(0)
    );
    Ok(())
}
