mod common;

use fim_core::local_ratio::{
    approximate, approximate_fim, claim1_check, conflict_weight_ceiling, default_params, lemma1_check,
    local_ratio_preprocess, residual_greedy, telescoped_charge, Approximation, CheckOutcome,
};
use fim_core::rational::int;
use fim_core::{lp, oracle, EdgeId, Rational};

use common::random_corpus;

#[test]
fn pipeline_on_random_graphs() {
    for delta in 3..=5 {
        for g in random_corpus(40, (4, 24), delta, 500 + delta as u64) {
            let cert = approximate_fim(&g, delta).unwrap();
            assert!(g.is_induced_matching_pairwise(cert.matching.edges()).unwrap());
            assert!(&cert.f * int(cert.matching.size() as i64) >= cert.nu_s_star);
            assert_eq!(cert.x.total(), cert.nu_s_star);

            let params = default_params(delta).unwrap();
            let pre = local_ratio_preprocess(&g, &cert.x, &params).unwrap();
            let picks: Vec<EdgeId> = pre.steps.iter().map(|s| s.edge).collect();
            // conflict sets taken in the input graph, minus what earlier picks claimed
            let fresh = telescoped_charge(&g, &cert.x, &picks).unwrap();
            for (step, fresh) in pre.steps.iter().zip(&fresh) {
                assert_eq!(&step.charge, fresh);
                assert!(step.charge <= params.f);
            }
            let removed: Rational = fresh.iter().sum();
            let left = cert.x.restrict(&pre.residual.edges).total();
            assert_eq!(removed + left, cert.nu_s_star);

            let residual = &pre.residual.graph;
            let xr = cert.x.restrict(&pre.residual.edges);
            assert!(lemma1_check(residual, &xr, &params).unwrap().is_ok());
            if residual.m() > 0 {
                assert_eq!(lemma1_check(residual, &xr, &params).unwrap(), CheckOutcome::Holds);
                assert!(claim1_check(residual, &xr, &params).unwrap().is_ok());
            }
        }
    }
}

#[test]
fn preprocessing_leaves_room_for_any_residual_matching() {
    for g in random_corpus(60, (6, 18), 4, 9000) {
        let params = default_params(4).unwrap();
        let x = lp::solve_primal(&g).unwrap().weights;
        let pre = local_ratio_preprocess(&g, &x, &params).unwrap();
        let (_, best) = oracle::exact_nu_s(&pre.residual.graph, 64).unwrap();
        let union: Vec<EdgeId> = pre
            .matching
            .edges()
            .iter()
            .copied()
            .chain(best.edges().iter().map(|&e| pre.residual.edges.to_old(e)))
            .collect();
        assert!(g.is_induced_matching_pairwise(&union).unwrap());
    }
}

#[test]
fn premise_is_out_of_reach_at_small_degree() {
    // no feasible x has x(C(e)) ≥ f on every edge, so residuals stay empty
    for delta in 3..=5 {
        let f = default_params(delta).unwrap().f;
        for g in random_corpus(15, (6, 16), delta, 40 + delta as u64) {
            assert!(conflict_weight_ceiling(&g).unwrap() < f);
        }
    }
}

#[test]
fn greedy_meets_its_guarantee_on_dense_graphs() {
    for delta in 3..=6 {
        for g in random_corpus(30, (8, 40), delta, 70 + delta as u64) {
            let m = residual_greedy(&g, delta).unwrap();
            assert!(g.is_induced_matching_pairwise(m.edges()).unwrap());
            assert!(int(3 * (delta * delta) as i64) * int(m.size() as i64) >= int(2 * g.m() as i64));
        }
    }
}

#[test]
fn dispatcher_picks_the_applicable_algorithm() {
    for g in random_corpus(40, (4, 16), 4, 321) {
        let approx = approximate(&g).unwrap();
        let cubic_part = g.components().iter().any(|c| c.iter().all(|&v| g.degree(v) == 3));
        let expect_subcubic = g.max_degree() <= 3 && !cubic_part;
        assert_eq!(matches!(approx, Approximation::Subcubic(_)), expect_subcubic);
        assert!(g.is_induced_matching_pairwise(approx.matching().edges()).unwrap());
    }
}
