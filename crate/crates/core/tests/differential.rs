//! Solver vs. brute force on small random digraphs.

mod common;

use common::{pairs, reversed, sparse_digraph};
use proptest::prelude::*;
use pvds::generator::random_digraph;
use pvds::oracle::{brute_force_pvds, brute_force_rpvds, pumpkin_by_paths};
use pvds::solver::minimum_rpvds;
use pvds::{
    applicable_rules, is_pumpkin, reduce_exhaustively, reduction_step, select_branch, solve_pvds,
    solve_rpvds, Digraph, Instance, ReductionOutcome, RuleId, VertexId,
};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n, prop_oneof![Just(0.15), Just(0.3), Just(0.5)], any::<u64>())
        .prop_map(|(n, p, seed)| random_digraph(n, p, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rpvds_matches_oracle(g in arb_graph(7)) {
        for (s, t) in pairs(&g) {
            let full = Instance::new(g.clone(), g.num_vertices() as i64 - 2, s, t).unwrap();
            let min = brute_force_rpvds(&full).unwrap().min_size;
            for k in 0..=g.num_vertices() as i64 - 2 {
                let inst = Instance { k, ..full.clone() };
                let (sol, stats) = solve_rpvds(&inst).unwrap();
                prop_assert_eq!(sol.is_some(), min.is_some_and(|m| m as i64 <= k),
                    "s={} t={} k={} edges={:?}", s, t, k, g.edges().collect::<Vec<_>>());
                if let Some(sol) = sol {
                    prop_assert!(sol.len() as i64 <= k);
                    prop_assert!(sol.certifies(&g, s, t));
                }
                prop_assert!(stats.leaves <= stats.nodes);
            }
        }
    }

    #[test]
    fn minimum_matches_oracle(g in arb_graph(7)) {
        for (s, t) in pairs(&g).into_iter().take(6) {
            let inst = Instance::new(g.clone(), 0, s, t).unwrap();
            let ours = minimum_rpvds(&inst).unwrap().map(|(k, _)| k);
            let full = Instance { k: g.num_vertices() as i64, ..inst };
            prop_assert_eq!(ours, brute_force_rpvds(&full).unwrap().min_size);
        }
    }

    #[test]
    fn pvds_matches_oracle(g in arb_graph(6), k in 0i64..5) {
        let (ours, _) = solve_pvds(&g, k).unwrap();
        let truth = brute_force_pvds(&g, k).unwrap();
        prop_assert_eq!(ours.is_some(), truth.yes());
        if let Some(found) = ours {
            prop_assert!(found.solution.certifies(&g, found.s, found.t));
        }
    }

    #[test]
    fn recognizer_matches_path_definition(g in arb_graph(8)) {
        for (s, t) in pairs(&g) {
            let structural = is_pumpkin(&g, s, t).unwrap().is_pumpkin();
            prop_assert_eq!(structural, pumpkin_by_paths(&g, s, t));
            prop_assert_eq!(structural, is_pumpkin(&g.reverse(), t, s).unwrap().is_pumpkin());
        }
    }

    #[test]
    fn reduction_preserves_answer(g in arb_graph(7), k in 0i64..5) {
        for (s, t) in pairs(&g) {
            let inst = Instance::new(g.clone(), k, s, t).unwrap();
            let truth = brute_force_rpvds(&inst).unwrap().yes();
            match reduce_exhaustively(inst.clone()) {
                ReductionOutcome::Decided { yes, partial } => {
                    prop_assert_eq!(yes, truth);
                    prop_assert!(!partial.deleted.contains(&s) && !partial.deleted.contains(&t));
                    if yes {
                        prop_assert!(partial.certifies(&g, s, t));
                    }
                }
                ReductionOutcome::Reduced { instance, forced } => {
                    prop_assert_eq!(forced.len() as i64, k - instance.k);
                    prop_assert!(!forced.deleted.contains(&s) && !forced.deleted.contains(&t));
                    prop_assert_eq!(reduction_step(&instance), None);
                    prop_assert_eq!(brute_force_rpvds(&instance).unwrap().yes(), truth);
                    // Completeness: a reduced instance always has a branching rule.
                    prop_assert!(select_branch(&instance).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn branching_is_safe(g in arb_graph(7), k in 1i64..5) {
        for (s, t) in pairs(&g) {
            let inst = Instance::new(g.clone(), k, s, t).unwrap();
            let ReductionOutcome::Reduced { instance, .. } = reduce_exhaustively(inst) else {
                continue;
            };
            let d = select_branch(&instance).unwrap().unwrap();
            let truth = brute_force_rpvds(&instance).unwrap().yes();
            let any_child = d.sets.iter().any(|set| {
                set.len() as i64 <= instance.k
                    && brute_force_rpvds(&instance.without(set).unwrap()).unwrap().yes()
            });
            prop_assert_eq!(any_child, truth, "rule {} sets {:?}", d.rule, d.sets);
            for (set, &min) in d.sets.iter().zip(d.rule.guaranteed_vector()) {
                prop_assert!(set.len() >= min);
                prop_assert!(!set.contains(&s) && !set.contains(&t));
            }
        }
    }

    #[test]
    fn primed_rule_is_mirror_of_unprimed(n in 6usize..13, seed in any::<u64>(), k in 1i64..5) {
        let g = sparse_digraph(n, seed);
        let inst = Instance::new(g, k, VertexId(0), VertexId(1)).unwrap();
        for inst in [inst.clone(), reversed(&inst)] {
            let ReductionOutcome::Reduced { instance, .. } = reduce_exhaustively(inst) else {
                continue;
            };
            let d = select_branch(&instance).unwrap().unwrap();
            let mirror = RuleId::new(d.rule.index(), !d.rule.primed());
            let flipped = reversed(&instance);
            if d.rule.primed() {
                let r = select_branch(&flipped).unwrap().unwrap();
                prop_assert_eq!(Some(r.rule), mirror);
                prop_assert_eq!((r.pivot, r.sets), (d.pivot, d.sets));
            } else if let Some(mirror) = mirror {
                prop_assert!(applicable_rules(&flipped).contains(&mirror));
            }
        }
    }
}
