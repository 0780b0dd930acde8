mod common;

use fim_core::dual_constructor::{build_good_dual, theorem1_bound};
use fim_core::local_ratio::{approximate, Approximation};
use fim_core::rational::{int, ratio};
use fim_core::{lp, oracle, EdgeId, Graph};
use proptest::prelude::*;

use common::without_small_components;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |keep| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(keep).filter(|(_, k)| *k).map(|(p, _)| p)).unwrap()
        })
    })
}

fn bounded(max_n: usize, delta: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_map(move |g| {
        let mut degree = vec![0; g.n()];
        let edges: Vec<_> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| {
                let fits = degree[u] < delta && degree[v] < delta;
                if fits {
                    degree[u] += 1;
                    degree[v] += 1;
                }
                fits
            })
            .collect();
        Graph::new(g.n(), edges).unwrap()
    })
}

/// Endpoints pairwise distinct and no edge between two members.
fn naive_induced(g: &Graph, set: &[EdgeId]) -> bool {
    set.iter().enumerate().all(|(i, &e)| {
        set[..i].iter().all(|&f| {
            let (a, b) = g.edges()[e];
            let (c, d) = g.edges()[f];
            [a, b]
                .iter()
                .all(|&x| [c, d].iter().all(|&z| x != z && g.edge_between(x, z).is_none()))
        })
    })
}

proptest! {
    #[test]
    fn induced_matching_tests_agree(g in graph(9), mask in any::<u64>()) {
        let set: Vec<EdgeId> = (0..g.m()).filter(|e| mask >> (e % 64) & 1 == 1).collect();
        let naive = naive_induced(&g, &set);
        prop_assert_eq!(g.is_induced_matching(&set).unwrap(), naive);
        prop_assert_eq!(g.is_induced_matching_pairwise(&set).unwrap(), naive);
    }

    #[test]
    fn oracle_matches_enumeration(g in graph(8).prop_filter("small", |g| g.m() <= 12)) {
        let best = (0u32..1 << g.m())
            .filter_map(|mask| {
                let set: Vec<EdgeId> = (0..g.m()).filter(|e| mask >> e & 1 == 1).collect();
                naive_induced(&g, &set).then_some(set.len())
            })
            .max()
            .unwrap();
        let (size, witness) = oracle::exact_nu_s(&g, 64).unwrap();
        prop_assert_eq!(size, best);
        prop_assert!(naive_induced(&g, witness.edges()));
        prop_assert_eq!(witness.size(), size);
    }

    #[test]
    fn lp_sandwich(g in graph(9)) {
        let p = lp::solve_primal(&g).unwrap();
        let d = lp::solve_dual(&g).unwrap();
        prop_assert_eq!(&p.objective, &d.objective);
        prop_assert!(lp::check_primal_feasible(&g, &p.weights).unwrap());
        prop_assert!(lp::check_dual_feasible(&g, &d.weights).unwrap());
        let (nu_s, _) = oracle::exact_nu_s(&g, 64).unwrap();
        prop_assert!(int(nu_s as i64) <= p.objective);
        // uniform 1/(2Δ−1) is feasible, so it bounds the optimum from below
        if g.m() > 0 {
            prop_assert!(p.objective >= ratio(g.m() as i64, 2 * g.max_degree() as i64 - 1));
        }
    }

    #[test]
    fn text_round_trip(g in graph(12)) {
        let text = g.serialize();
        let back = Graph::parse(&text).unwrap();
        prop_assert_eq!(&back, &g.canonical());
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn circulants_hit_the_regular_value(n in 5usize..=13, jumps in proptest::collection::btree_set(1usize..=6, 1..=3)) {
        let jumps: Vec<usize> = jumps.into_iter().filter(|&j| 2 * j < n).collect();
        prop_assume!(!jumps.is_empty());
        let edges = (0..n).flat_map(|u| jumps.iter().map(move |&j| (u, (u + j) % n)));
        let g = Graph::new(n, edges).unwrap();
        let delta = g.max_degree();
        prop_assert!(g.is_regular(delta));
        prop_assert_eq!(lp::solve_primal(&g).unwrap().objective, ratio(g.m() as i64, 2 * delta as i64 - 1));
    }

    #[test]
    fn approximations_are_valid(g in bounded(12, 5).prop_filter("edges", |g| g.m() > 0)) {
        let nu_star = lp::solve_primal(&g).unwrap().objective;
        let approx = approximate(&g).unwrap();
        let m = approx.matching().edges();
        prop_assert!(naive_induced(&g, m));
        let size = int(m.len() as i64);
        match &approx {
            Approximation::Subcubic(c) => {
                prop_assert!(g.max_degree() <= 3);
                prop_assert!(size * ratio(7, 3) >= nu_star);
                prop_assert!(lp::check_dual_feasible(&g, &c.y).unwrap());
            }
            Approximation::LocalRatio(c) => prop_assert!(&c.f * size >= nu_star),
        }
    }

    #[test]
    fn good_dual_bounds_the_lp(g in bounded(11, 4).prop_map(|g| without_small_components(&g))) {
        let delta = g.max_degree().max(2);
        let (dual, _) = build_good_dual(&g, delta).unwrap();
        prop_assert!(lp::check_dual_feasible(&g, &dual.y).unwrap());
        prop_assert!(dual.total <= theorem1_bound(g.n(), delta));
        prop_assert!(lp::solve_primal(&g).unwrap().objective <= dual.total);
    }
}
