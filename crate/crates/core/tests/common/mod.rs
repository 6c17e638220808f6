#![allow(dead_code)]

use hybrid_search::domains::generate::{generate_instances, GenSpec};
use hybrid_search::domains::{Hanoi4Instance, InstanceSpec, Problem};
use hybrid_search::heuristics::HeuristicHandle;
use hybrid_search::oracle::bfs_solve;
use hybrid_search::Cost;

pub struct Case {
    pub id: String,
    pub problem: Problem,
    pub h: HeuristicHandle,
}

pub fn cases(spec: &str, count: usize, seed: u64) -> Vec<Case> {
    let g = GenSpec::parse(spec).unwrap();
    generate_instances(&g, count, seed)
        .unwrap()
        .into_iter()
        .map(|g| case(g.id, &g.spec))
        .collect()
}

pub fn case(id: String, spec: &InstanceSpec) -> Case {
    let problem = spec.build().unwrap();
    let h = HeuristicHandle::from_spec("default", &problem.space, None).unwrap();
    Case { id, problem, h }
}

pub fn hanoi_tower(discs: u8) -> Case {
    case(
        format!("hanoi4-tower-{discs}"),
        &InstanceSpec::Hanoi(Hanoi4Instance::tower(discs, 0, 3)),
    )
}

pub fn oracle_cost(p: &Problem) -> Cost {
    bfs_solve(&p.space, &p.start, &p.goal, 5_000_000)
        .unwrap()
        .expect("instance is solvable")
        .cost
}
