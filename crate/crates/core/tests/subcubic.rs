mod common;

use fim_core::rational::{int, ratio};
use fim_core::subcubic::{assign_head_duals, build_head, subcubic_primal_dual};
use fim_core::{lp, oracle, Graph, Rational};

use common::figures::{fixtures, head_conditions};
use common::random_corpus;

#[test]
fn figure_labels_satisfy_head_conditions() {
    let configs = fixtures();
    assert_eq!(configs.len(), 56);
    for c in &configs {
        let thrice: Vec<Rational> = c.thrice.iter().map(|&t| int(t)).collect();
        head_conditions(&c.graph, &thrice).unwrap_or_else(|e| panic!("config {}: {e}", c.number));
        assert!(c.graph.max_degree() <= 3, "config {}", c.number);
    }
}

#[test]
fn head_lp_never_needs_more_than_the_figures() {
    for c in fixtures() {
        let head = build_head(&c.graph, 0, 1).unwrap();
        let y = assign_head_duals(&head).unwrap();
        let figure = ratio(c.thrice.iter().sum(), 3);
        assert!(y.total() <= figure, "config {}", c.number);
        // the solver's weights pass the same independent check
        let thrice: Vec<Rational> = (0..c.graph.m())
            .map(|e| &y[head.h.edges.to_new(e).unwrap()] * int(3))
            .collect();
        head_conditions(&c.graph, &thrice).unwrap_or_else(|e| panic!("config {}: {e}", c.number));
    }
}

#[test]
fn certificates_on_random_subcubic_graphs() {
    let corpus: Vec<Graph> = random_corpus(400, (2, 20), 3, 77)
        .into_iter()
        .filter(|g| g.components().iter().all(|c| c.iter().any(|&v| g.degree(v) < 3)))
        .collect();
    assert!(corpus.len() >= 300);
    for g in &corpus {
        let cert = subcubic_primal_dual(g).unwrap();
        let m = cert.matching.edges();
        assert!(g.is_induced_matching_pairwise(m).unwrap());
        assert!(lp::check_dual_feasible(g, &cert.y).unwrap());
        let size = int(m.len() as i64);
        assert!(cert.y.total() <= ratio(7, 3) * &size);
        let nu_star: Rational = lp::solve_primal(g).unwrap().objective;
        assert!(nu_star <= cert.y.total());
        let (nu_s, _) = oracle::exact_nu_s(g, 64).unwrap();
        assert!(m.len() <= nu_s);
        assert!(size * int(7) >= int(3) * int(nu_s as i64));
    }
}
