//! The small directed example graph: A* stops at 12 stored nodes and the
//! BFHS phase finishes from the Open frontier, one call per frontier depth.

use hybrid_search::bfhs::BfhsOutcome;
use hybrid_search::domains::{figure1_space, FIGURE1_THRESHOLD};
use hybrid_search::heuristics::HeuristicHandle;
use hybrid_search::hybrid::{run_hybrid, HybridConfig};
use hybrid_search::StateSpace;

fn main() -> hybrid_search::Result<()> {
    let graph = figure1_space();
    let space = graph.space()?;
    let h = HeuristicHandle::VertexTable(space.heuristic_values().to_vec().into());
    let cfg = HybridConfig {
        node_threshold: FIGURE1_THRESHOLD,
        max_calls: None,
        ..Default::default()
    };
    let r = run_hybrid(&space, &h, &graph.start(), &graph.goal_test(), &cfg)?;
    let (store, frontier) = r.phase1.as_ref().expect("A* phase stops at the threshold");
    let name = |id: u32| space.describe(&store.get(id).state);

    let open: Vec<String> = frontier.iter().map(|&id| name(id)).collect();
    println!("A* stored {} nodes; Open = {}", store.len(), open.join(" "));
    for call in &r.calls {
        let seeds: Vec<String> = call.set.members.iter().map(|&id| name(id)).collect();
        let result = match &call.outcome {
            BfhsOutcome::Solved { cost, .. } => format!("solved, cost {cost}"),
            BfhsOutcome::Failed { next_f, .. } => format!("failed, f <- {next_f}"),
            BfhsOutcome::BudgetExceeded { .. } => "budget exceeded".into(),
        };
        println!("bound {:>2}  {{{}}}  {result}", call.bound, seeds.join(","));
    }
    let path: Vec<String> = r.report.solution().unwrap().states.iter().map(|s| space.describe(s)).collect();
    println!("path {}", path.join(" -> "));
    Ok(())
}
