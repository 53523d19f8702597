mod common;

use hcconfl_core::greedy::{greedy_close, hybrid_solve, ClosingScores, GreedyParams};
use hcconfl_core::hop_paths::{hop_bellman_ford, HopPathCache};
use hcconfl_core::nrbi::{nrbi_with, NrbiOptions, Phase2Reference};
use hcconfl_core::testing::{random_instance, TinyConfig};
use hcconfl_core::{
    exact_hcst, exact_solve, ghs_solve, hs_solve, parse_tiny, to_tiny, validate, Evaluator, HarmonyParams,
    HarmonyVector, Instance, NodeId,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::root_open_vectors;

fn instance_from(seed: u64, cfg: &TinyConfig) -> Instance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), cfg)
}

fn tiny(seed: u64) -> Instance {
    instance_from(seed, &TinyConfig::default())
}

/// Cheapest simple path of at most `budget` edges, by depth-first search.
fn brute_force_dist(inst: &Instance, source: NodeId, target: NodeId, budget: usize) -> f64 {
    fn go(inst: &Instance, at: NodeId, target: NodeId, left: usize, seen: &mut Vec<bool>, cost: f64, best: &mut f64) {
        if at == target {
            *best = best.min(cost);
            return;
        }
        if left == 0 {
            return;
        }
        for e in inst.edges() {
            let next = if e.u == at {
                e.v
            } else if e.v == at {
                e.u
            } else {
                continue;
            };
            if !seen[next.index()] {
                seen[next.index()] = true;
                go(inst, next, target, left - 1, seen, cost + e.cost, best);
                seen[next.index()] = false;
            }
        }
    }
    let mut seen = vec![false; inst.node_count()];
    seen[source.index()] = true;
    let mut best = f64::INFINITY;
    go(inst, source, target, budget, &mut seen, 0.0, &mut best);
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hop_distances_match_path_enumeration(seed in any::<u64>()) {
        let cfg = TinyConfig { max_nodes: 10, max_edges: 20, max_hops: 5, ..TinyConfig::default() };
        let inst = instance_from(seed, &cfg);
        let source = NodeId(1 + (seed % inst.node_count() as u64) as u32);
        let h = inst.hop_limit();
        let table = hop_bellman_ford(&inst, source, h).unwrap();
        for target in inst.nodes() {
            for budget in 0..=h {
                let want = brute_force_dist(&inst, source, target, budget);
                prop_assert_eq!(table.dist(target, budget), want);
                match table.path(target, budget) {
                    None => prop_assert!(want.is_infinite()),
                    Some(p) => {
                        prop_assert_eq!(p.source(), source);
                        prop_assert_eq!(p.target(), target);
                        prop_assert!(p.hops() <= budget);
                        let cost: f64 = p.nodes.windows(2).map(|w| inst.edge_cost(w[0], w[1]).unwrap()).sum();
                        prop_assert_eq!(cost, want);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn nrbi_trees_are_feasible_upper_bounds(seed in any::<u64>()) {
        let inst = tiny(seed);
        let cache = HopPathCache::new(&inst);
        for v in root_open_vectors(&inst) {
            let required = v.open_nodes(&inst);
            let exact = exact_hcst(&inst, &required).unwrap();
            for reference in [Phase2Reference::InsertionPath, Phase2Reference::PartialGraphPath] {
                let tree = nrbi_with(&cache, &required, NrbiOptions { reference });
                match (&tree, &exact) {
                    (Ok(t), Some(opt)) => {
                        prop_assert!(t.is_well_formed());
                        prop_assert!(t.max_depth() <= inst.hop_limit());
                        prop_assert!(required.iter().all(|&r| t.contains(r)));
                        prop_assert!(t.cost(&inst) >= opt.cost - 1e-9);
                    }
                    (Err(_), None) => {}
                    _ => prop_assert!(false, "feasibility disagrees with the oracle for {}", v),
                }
            }
        }
    }

    #[test]
    fn evaluated_solutions_validate_and_bound_the_optimum(seed in any::<u64>()) {
        let inst = tiny(seed);
        let optimum = exact_solve(&inst).unwrap();
        prop_assert!(validate(&inst, &optimum).is_empty());
        let ev = Evaluator::new(&inst);
        let mut best = f64::INFINITY;
        for mut v in root_open_vectors(&inst) {
            ev.repair(&mut v);
            let s = ev.evaluate(&v).unwrap();
            prop_assert!(validate(&inst, &s).is_empty(), "{:?}", validate(&inst, &s));
            prop_assert_eq!(s.recompute_cost(&inst), s.cost);
            prop_assert!(s.total() >= optimum.total() - 1e-9);
            best = best.min(s.total());
        }

        let greedy = GreedyParams { top_k: inst.facility_count(), sample_count: 50, ..GreedyParams::default() };
        let (h, _) = hybrid_solve(&inst, &greedy, seed).unwrap();
        prop_assert_eq!(h.total(), best);
    }

    #[test]
    fn closing_scores_match_literal_formula(seed in any::<u64>()) {
        let inst = tiny(seed);
        let paths = HopPathCache::new(&inst);
        let root = inst.root_position();
        for v in root_open_vectors(&inst) {
            let scores = ClosingScores::compute(&paths, &v);
            let open: Vec<usize> = v.open_positions().collect();
            for &f in open.iter().filter(|&&f| f != root) {
                let mut first = 0.0;
                let mut second = 0.0;
                for k in 0..inst.customer_count() {
                    let mut costs: Vec<(f64, usize)> = open.iter().map(|&g| (inst.assignment_cost(g, k), g)).collect();
                    costs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    if costs[0].1 == f {
                        first += costs[0].0;
                        second += costs[1].0;
                    }
                }
                let path = hop_bellman_ford(&inst, inst.root(), inst.hop_limit()).unwrap().dist(inst.facilities()[f], inst.hop_limit());
                prop_assert_eq!(scores.cost_of_closing[&f], second - first - inst.opening_cost(f) - path);
            }
            prop_assert!(!scores.cost_of_closing.contains_key(&root));

            for max_open in 1..=inst.facility_count() {
                let closed = greedy_close(&inst, &v, max_open).unwrap();
                let mut naive = v.clone();
                while naive.open_count() > max_open {
                    let Some(p) = ClosingScores::compute(&paths, &naive).best_to_close() else { break };
                    naive.set(p, false);
                }
                prop_assert_eq!(&closed, &naive);
                prop_assert!(closed.is_open(root));
                prop_assert!(closed.open_count() <= max_open.max(1));
                prop_assert!(closed.open_positions().all(|p| v.is_open(p)));
                if v.open_count() <= max_open {
                    prop_assert_eq!(&closed, &v);
                }
            }
        }
    }

    #[test]
    fn hcst_ignores_edge_order(seed in any::<u64>()) {
        let inst = tiny(seed);
        let text = to_tiny(&inst);
        let (mut edges, rest): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| l.starts_with("e "));
        edges.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        let shuffled = parse_tiny(&[rest, edges].concat().join("\n")).unwrap();
        let all = HarmonyVector::new(vec![true; inst.facility_count()]);
        let required = all.open_nodes(&inst);
        let a = exact_hcst(&inst, &required).unwrap().map(|o| o.cost);
        let b = exact_hcst(&shuffled, &required).unwrap().map(|o| o.cost);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn tiny_format_round_trips(seed in any::<u64>()) {
        let inst = tiny(seed).with_name("");
        let back = parse_tiny(&to_tiny(&inst)).unwrap();
        prop_assert_eq!(back, inst);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn searches_return_valid_solutions_above_the_optimum(seed in any::<u64>()) {
        let inst = tiny(seed);
        let optimum = exact_solve(&inst).unwrap().total();
        let params = HarmonyParams { seed, max_no_improve: 200, ..HarmonyParams::default() };
        let greedy = GreedyParams { max_open: 2, ..GreedyParams::default() };
        let (a, _) = hs_solve(&inst, &params).unwrap();
        let (b, _) = ghs_solve(&inst, &params, &greedy).unwrap();
        for s in [a, b] {
            prop_assert!(validate(&inst, &s).is_empty());
            prop_assert!(s.total() >= optimum - 1e-9);
            prop_assert_eq!(s.recompute_cost(&inst), s.cost);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn harmony_runs_are_reproducible_and_monotone(seed in any::<u64>()) {
        let cfg = TinyConfig { max_nodes: 12, max_facilities: 10, max_edges: 24, ..TinyConfig::default() };
        let inst = instance_from(seed, &cfg);
        let params = HarmonyParams { seed, hms: 8, max_no_improve: 300, ..HarmonyParams::default() };
        let (a, sa) = hs_solve(&inst, &params).unwrap();
        let (b, sb) = hs_solve(&inst, &params).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&sa.trajectory, &sb.trajectory);
        prop_assert_eq!((sa.iterations, sa.evaluations), (sb.iterations, sb.evaluations));
        prop_assert!(sa.trajectory.windows(2).all(|w| w[1].1 < w[0].1 && w[1].0 > w[0].0));
        prop_assert_eq!(sa.trajectory.last().unwrap().1, a.total());

        let memory = hcconfl_core::harmony::fill_memory(&inst, &params).unwrap();
        let rows = memory.entries();
        prop_assert!(rows.windows(2).all(|w| w[0].objective <= w[1].objective && w[0].vector != w[1].vector));
        prop_assert!(rows.iter().all(|r| r.vector.is_open(inst.root_position())));
        let distinct: std::collections::HashSet<_> = rows.iter().map(|r| &r.vector).collect();
        prop_assert_eq!(distinct.len(), rows.len());
    }
}
