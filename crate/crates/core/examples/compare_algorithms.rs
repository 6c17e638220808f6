//! Runs all four algorithms on a few generated instances and prints the
//! benchmark table.

use hybrid_search::bench::{cli_bench, format_rows, Algorithm, Format, RunRequest};
use hybrid_search::domains::generate::{generate_instances, GenSpec};

fn main() -> hybrid_search::Result<()> {
    let mut requests = Vec::new();
    for spec in ["tile:3x3:walk=60", "pancake:n=9", "hanoi4:discs=7"] {
        for g in generate_instances(&GenSpec::parse(spec)?, 2, 42)? {
            for alg in Algorithm::ALL_DEFAULT {
                let mut r = RunRequest::new(g.id.clone(), g.spec.clone(), alg);
                r.node_threshold = Some(500);
                requests.push(r);
            }
        }
    }
    let rows = cli_bench(&requests, None, 1);
    print!("{}", format_rows(&rows, Format::Table, true));
    Ok(())
}
