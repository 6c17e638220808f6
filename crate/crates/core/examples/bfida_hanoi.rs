//! BFIDA* on the 4-peg Towers of Hanoi. Each iteration is one
//! breadth-first heuristic search with a growing cost bound.

use hybrid_search::bfhs::BfhsOutcome;
use hybrid_search::bfida::{run_bfida, BfidaConfig};
use hybrid_search::domains::{Hanoi4Instance, InstanceSpec};
use hybrid_search::heuristics::HeuristicHandle;

fn main() -> hybrid_search::Result<()> {
    let discs = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let p = InstanceSpec::Hanoi(Hanoi4Instance::tower(discs, 0, 3)).build()?;
    let h = HeuristicHandle::from_spec("default", &p.space, None)?;
    println!("{discs} discs, heuristic {h}");
    let r = run_bfida(&p.space, &h, &p.start, &p.goal, &BfidaConfig::default())?;
    for it in &r.iterations {
        let s = it.outcome.stats();
        let tail = match it.outcome {
            BfhsOutcome::Failed { next_f, .. } => format!("next bound {next_f}"),
            _ => "solved".into(),
        };
        println!(
            "bound {:>3}  relay depth {:>3}  generated {:>9}  peak {:>8}  {tail}",
            it.bound, it.relay_depth, s.generated, s.peak_stored
        );
    }
    let st = &r.report.stats;
    println!(
        "cost {:?}  peak stored {}  reconstruction generated {}",
        r.report.cost(),
        st.peak_stored,
        st.generated_reconstruction
    );
    Ok(())
}
