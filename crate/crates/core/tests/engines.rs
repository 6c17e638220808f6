mod common;

use common::{cases, hanoi_tower, oracle_cost};
use hybrid_search::astar::{run_astar, AStarConfig, AStarOutcome};
use hybrid_search::bfhs::{run_bfhs, BfhsCall, BfhsOutcome, BfhsSeed};
use hybrid_search::bfida::{run_bfida, BfidaConfig};
use hybrid_search::hybrid::{run_hybrid, HybridConfig};
use hybrid_search::oracle::{bfs_distance, bfs_solve};
use hybrid_search::state::validate_solution;
use hybrid_search::StateSpace;

#[test]
fn astar_matches_oracle_on_eight_puzzles() {
    for c in cases("tile:3x3:walk=40", 100, 1) {
        let p = &c.problem;
        let out = run_astar(&p.space, &c.h, &p.start, &p.goal, &AStarConfig::default()).unwrap();
        let sol = out.solution().expect("solved");
        assert_eq!(sol.cost, oracle_cost(p), "{}", c.id);
        validate_solution(&p.space, &p.start, &p.goal, sol).unwrap();
    }
}

#[test]
fn astar_expands_nondecreasing_f_with_min_h_ties() {
    struct Trace(Vec<(u32, u32)>);
    impl hybrid_search::astar::SearchObserver for Trace {
        fn on_expand(&mut self, _: &hybrid_search::PackedState, g: u32, h: u32) {
            self.0.push((g + h, h));
        }
    }
    for c in cases("tile:3x3:walk=30", 10, 2) {
        let p = &c.problem;
        let mut trace = Trace(Vec::new());
        let cfg = AStarConfig {
            audit_order: true,
            ..Default::default()
        };
        hybrid_search::astar::run_astar_observed(&p.space, &c.h, &p.start, &p.goal, &cfg, &mut trace)
            .unwrap();
        assert!(trace.0.windows(2).all(|w| w[0].0 <= w[1].0), "{}", c.id);
    }
}

#[test]
fn threshold_frontier_covers_an_optimal_path() {
    for c in cases("tile:3x3:walk=40", 20, 3) {
        let p = &c.problem;
        let cfg = AStarConfig {
            node_threshold: Some(60),
            ..Default::default()
        };
        let AStarOutcome::ThresholdReached { frontier, store, .. } =
            run_astar(&p.space, &c.h, &p.start, &p.goal, &cfg).unwrap()
        else {
            continue;
        };
        assert!(store.len() <= 60);
        let path = bfs_solve(&p.space, &p.start, &p.goal, 1 << 20).unwrap().unwrap().states;
        let covered = path.iter().enumerate().any(|(i, s)| {
            store
                .lookup(s)
                .is_some_and(|id| frontier.contains(&id) && store.get(id).g == i as u32)
        });
        assert!(covered, "{}", c.id);
    }
}

#[test]
fn bfhs_from_start_at_optimal_bound() {
    for c in cases("tile:3x3:walk=40", 20, 4) {
        let p = &c.problem;
        let cost = oracle_cost(p);
        let call = BfhsCall::new(
            cost,
            vec![BfhsSeed {
                state: p.start.clone(),
                g: 0,
                origin: 0,
            }],
        );
        match run_bfhs(&p.space, &c.h, &call, &p.goal).unwrap() {
            BfhsOutcome::Solved { cost: found, .. } => assert_eq!(found, cost),
            other => panic!("{}: {other:?}", c.id),
        }
        if cost > 0 {
            let call = BfhsCall { bound: cost - 1, ..call };
            assert!(matches!(
                run_bfhs(&p.space, &c.h, &call, &p.goal).unwrap(),
                BfhsOutcome::Failed { .. }
            ));
        }
    }
}

#[test]
fn bfida_matches_oracle_with_relay_on_optimal_path() {
    let mut all = cases("tile:3x3:walk=40", 40, 5);
    all.push(hanoi_tower(3));
    all.extend(cases("pancake:n=7", 10, 5));
    for c in all {
        let p = &c.problem;
        let cost = oracle_cost(p);
        let r = run_bfida(&p.space, &c.h, &p.start, &p.goal, &BfidaConfig::default()).unwrap();
        assert_eq!(r.report.cost(), Some(cost), "{}", c.id);
        let bounds: Vec<_> = r.iterations.iter().map(|i| i.bound).collect();
        assert!(bounds.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*bounds.last().unwrap(), cost);
        if let Some(relay) = &r.relay {
            let goal = r.report.solution().unwrap().goal().unwrap().clone();
            let a = bfs_distance(&p.space, &p.start, &relay.state, 1 << 22).unwrap().unwrap();
            let b = bfs_distance(&p.space, &relay.state, &goal, 1 << 22).unwrap().unwrap();
            assert_eq!(a + b, cost, "{}", c.id);
            assert_eq!(a, relay.depth);
        }
    }
}

#[test]
fn hanoi_towers_match_oracle() {
    for d in 3..=6 {
        let c = hanoi_tower(d);
        let p = &c.problem;
        let cost = oracle_cost(p);
        let a = run_astar(&p.space, &c.h, &p.start, &p.goal, &AStarConfig::default()).unwrap();
        assert_eq!(a.solution().unwrap().cost, cost);
        let cfg = HybridConfig {
            node_threshold: 20,
            ..Default::default()
        };
        let r = run_hybrid(&p.space, &c.h, &p.start, &p.goal, &cfg).unwrap();
        assert_eq!(r.report.cost(), Some(cost));
    }
}

#[test]
fn hybrid_matches_oracle_with_tiny_thresholds() {
    for c in cases("tile:3x3:walk=40", 100, 6) {
        let p = &c.problem;
        let cost = oracle_cost(p);
        for max_calls in [None, Some(4)] {
            let cfg = HybridConfig {
                node_threshold: 30,
                max_calls,
                ..Default::default()
            };
            let r = run_hybrid(&p.space, &c.h, &p.start, &p.goal, &cfg).unwrap();
            assert_eq!(r.report.cost(), Some(cost), "{} {max_calls:?}", c.id);
            validate_solution(&p.space, &p.start, &p.goal, r.report.solution().unwrap()).unwrap();
            assert!(r.report.stats.is_consistent());
        }
    }
}

#[test]
fn hybrid_calls_stop_after_success_and_run_deepest_first() {
    for c in cases("tile:3x3:walk=40", 30, 7) {
        let p = &c.problem;
        let cfg = HybridConfig {
            node_threshold: 40,
            max_calls: None,
            ..Default::default()
        };
        let r = run_hybrid(&p.space, &c.h, &p.start, &p.goal, &cfg).unwrap();
        if let Some(last) = r.calls.last() {
            assert!(matches!(last.outcome, BfhsOutcome::Solved { .. }));
        }
        let solved = r
            .calls
            .iter()
            .filter(|c| matches!(c.outcome, BfhsOutcome::Solved { .. }))
            .count();
        assert!(solved <= 1);
        for w in r.calls.windows(2) {
            if w[0].iteration == w[1].iteration {
                assert!(w[0].set.depth_range.0 > w[1].set.depth_range.1);
            } else {
                assert!(w[0].bound < w[1].bound);
            }
        }
    }
}

#[test]
fn explicit_graph_engines_agree() {
    use hybrid_search::domains::figure1_space;
    let g = figure1_space();
    let p = hybrid_search::domains::InstanceSpec::Graph(g).build().unwrap();
    assert_eq!(p.space.graph_class(), hybrid_search::GraphClass::Directed);
    let h = hybrid_search::heuristics::HeuristicHandle::from_spec("graph", &p.space, None).unwrap();
    let r = run_bfida(&p.space, &h, &p.start, &p.goal, &BfidaConfig::default()).unwrap();
    assert_eq!(r.report.cost(), Some(9));
    for t in 1..=20 {
        let cfg = HybridConfig {
            node_threshold: t,
            ..Default::default()
        };
        let r = run_hybrid(&p.space, &h, &p.start, &p.goal, &cfg).unwrap();
        assert_eq!(r.report.cost(), Some(9), "threshold {t}");
    }
}
