//! Primal-dual 3/7-approximation for graphs of maximum degree at most 3
//! without 3-regular components.
//!
//! Repeatedly take an edge `v₀v₁` at a minimum-degree vertex, put it into
//! the matching, and delete the head `H = G[N[v₀] ∪ N[v₁] ∪ I]`, where `I`
//! collects the vertices isolated by removing `N[v₀] ∪ N[v₁]`. Each head
//! gets dual weights of total at most 7/3 on its own edges, with enough
//! weight on its vertices that the edges leading into the rest of the graph
//! are covered once the rest has been handled the same way. Boundary edges
//! keep weight zero.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, InducedMatching, Subgraph, VertexId};
use crate::lp::{self, EdgeWeights};
use crate::rational::{self, ratio, Rational};
use crate::simplex;

/// Largest `y(E(H))` a head may use.
pub fn head_budget() -> Rational {
    ratio(7, 3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadSubgraph {
    pub v0: VertexId,
    pub v1: VertexId,
    /// `N[v₀] ∪ N[v₁]`, sorted.
    pub core: Vec<VertexId>,
    /// Isolated vertices of `G − core`, sorted.
    pub isolates: Vec<VertexId>,
    /// `G[core ∪ isolates]`.
    pub h: Subgraph,
    /// Edges of `G` with exactly one end in the head.
    pub boundary: Vec<EdgeId>,
}

impl HeadSubgraph {
    /// Lower bounds on `y(δ_H(u))` for the vertices of `h` (in `h`'s ids)
    /// that need one: 2/3 for core vertices other than `v₀, v₁`, 1/3 for
    /// `v₀, v₁` and the isolates, in both cases only if `d_H(u) ≤ 2`.
    pub fn vertex_demands(&self) -> Vec<(VertexId, Rational)> {
        let h = &self.h.graph;
        (0..h.n())
            .filter(|&x| h.degree(x) <= 2)
            .map(|x| {
                let v = self.h.vertices.to_old(x);
                let demand = if v == self.v0 || v == self.v1 || self.isolates.contains(&v) {
                    ratio(1, 3)
                } else {
                    ratio(2, 3)
                };
                (x, demand)
            })
            .collect()
    }
}

/// `v₀` is the lowest-id vertex of minimum degree, `v₁` its lowest-id neighbor.
pub fn select_head(g: &Graph) -> Result<(VertexId, VertexId)> {
    let min = g
        .min_degree()
        .ok_or_else(|| Error::Precondition("cannot select a head in an empty graph".into()))?;
    if min == 0 {
        return Err(Error::Precondition("graph has isolated vertices".into()));
    }
    let v0 = (0..g.n()).find(|&v| g.degree(v) == min).unwrap();
    let v1 = g.neighbors(v0).min().unwrap();
    Ok((v0, v1))
}

pub fn build_head(g: &Graph, v0: VertexId, v1: VertexId) -> Result<HeadSubgraph> {
    if g.edge_between(v0, v1).is_none() {
        return Err(Error::Precondition(format!("{v0}{v1} is not an edge")));
    }
    let mut core: Vec<VertexId> = g.neighbors(v0).chain(g.neighbors(v1)).collect();
    core.sort_unstable();
    core.dedup();
    let rest = g.delete_vertices(&core)?;
    let isolates: Vec<VertexId> = (0..rest.graph.n())
        .filter(|&x| rest.graph.degree(x) == 0)
        .map(|x| rest.vertices.to_old(x))
        .collect();
    let mut vertices: Vec<VertexId> = core.iter().chain(&isolates).copied().collect();
    vertices.sort_unstable();
    let h = g.induced_subgraph(&vertices)?;
    let boundary = (0..g.m())
        .filter(|&e| {
            let (a, b) = g.edges()[e];
            h.vertices.to_new(a).is_some() != h.vertices.to_new(b).is_some()
        })
        .collect();
    Ok(HeadSubgraph {
        v0,
        v1,
        core,
        isolates,
        h,
        boundary,
    })
}

/// Minimum-weight `y` on `E(h)` with `y(δ_H(e)) ≥ 1` for each edge of `h`
/// and the vertex demands of [`HeadSubgraph::vertex_demands`]; fails unless
/// the minimum is at most 7/3.
pub fn assign_head_duals(head: &HeadSubgraph) -> Result<EdgeWeights> {
    let h = &head.h.graph;
    let m = h.m();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for e in 0..m {
        let mut row = vec![Rational::zero(); m];
        for f in h.edge_closed_neighborhood(e)? {
            row[f] = rational::one();
        }
        a.push(row);
        b.push(rational::one());
    }
    for (x, demand) in head.vertex_demands() {
        let mut row = vec![Rational::zero(); m];
        for &f in h.incident(x) {
            row[f] = rational::one();
        }
        a.push(row);
        b.push(demand);
    }
    let c = vec![rational::one(); m];
    let optimum = simplex::minimize_covering(&a, &b, &c)
        .map_err(|e| Error::Internal(format!("head LP failed ({e}) on head\n{}", h.serialize())))?;
    if optimum.value > head_budget() {
        return Err(Error::Internal(format!(
            "head needs {} > 7/3 on\n{}",
            rational::format(&optimum.value),
            h.serialize()
        )));
    }
    Ok(EdgeWeights::from_vec(optimum.solution))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCertificate {
    pub matching: InducedMatching,
    pub y: EdgeWeights,
    /// `y(E) ≤ (7/3)·|M|`.
    pub ratio_ok: bool,
}

fn check_subcubic(g: &Graph) -> Result<()> {
    if g.max_degree() > 3 {
        return Err(Error::Precondition(format!(
            "maximum degree {} exceeds 3",
            g.max_degree()
        )));
    }
    for comp in g.components() {
        if comp.iter().all(|&v| g.degree(v) == 3) {
            return Err(Error::Precondition(format!(
                "component containing vertex {} is 3-regular",
                comp[0]
            )));
        }
    }
    Ok(())
}

pub fn subcubic_primal_dual(g: &Graph) -> Result<PdCertificate> {
    check_subcubic(g)?;
    let mut y = vec![Rational::zero(); g.m()];
    let mut matching = Vec::new();

    let live: Vec<VertexId> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    let start = g.induced_subgraph(&live)?;
    let mut current = start.graph;
    let mut vertex_to_g: Vec<VertexId> = start.vertices.new_to_old().to_vec();
    let mut edge_to_g: Vec<EdgeId> = start.edges.new_to_old().to_vec();

    while current.m() > 0 {
        let (v0, v1) = select_head(&current)?;
        let head = build_head(&current, v0, v1)?;
        let weights = assign_head_duals(&head)?;
        for (e, value) in weights.into_vec().into_iter().enumerate() {
            y[edge_to_g[head.h.edges.to_old(e)]] = value;
        }
        matching.push(edge_to_g[current.edge_between(v0, v1).unwrap()]);

        let removed = head.h.vertices.new_to_old().to_vec();
        let next = current.delete_vertices(&removed)?;
        vertex_to_g = next.vertices.new_to_old().iter().map(|&v| vertex_to_g[v]).collect();
        edge_to_g = next.edges.new_to_old().iter().map(|&e| edge_to_g[e]).collect();
        current = next.graph;
        if (0..current.n()).any(|v| current.degree(v) == 0) {
            return Err(Error::Internal("head removal left an isolated vertex".into()));
        }
    }

    let matching = InducedMatching::new(g, matching)?;
    let y = EdgeWeights::from_vec(y);
    if !lp::check_dual_feasible(g, &y)? {
        return Err(Error::Internal("head duals are not feasible for (D)".into()));
    }
    let third = ratio(1, 3);
    for u in 0..g.n() {
        let d = g.degree(u);
        if (1..=2).contains(&d) && y.sum_over(g.incident(u)) < third {
            return Err(Error::Internal(format!("vertex {u} receives less than 1/3")));
        }
    }
    let ratio_ok = y.total() <= head_budget() * rational::int(matching.size() as i64);
    if !ratio_ok {
        return Err(Error::Internal("dual total exceeds 7/3 per matched edge".into()));
    }
    Ok(PdCertificate { matching, y, ratio_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{gen_complete, gen_cycle, gen_path, gen_star};
    use crate::rational::int;

    #[test]
    fn path_examples() {
        let cert = subcubic_primal_dual(&gen_path(3).unwrap()).unwrap();
        assert_eq!(cert.matching.edges(), &[0]);
        assert_eq!(cert.y.values(), &[ratio(1, 3), ratio(2, 3)]);
        let cert = subcubic_primal_dual(&gen_path(2).unwrap()).unwrap();
        assert_eq!(cert.matching.size(), 1);
        assert_eq!(cert.y.values(), &[int(1)]);
        assert!(cert.ratio_ok);
    }

    #[test]
    fn two_pendant_pentagons() {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.push((0, 5));
        let copy: Vec<_> = edges.iter().map(|&(a, b)| (a + 6, b + 6)).collect();
        edges.extend(copy);
        let g = Graph::new(12, edges).unwrap();
        let cert = subcubic_primal_dual(&g).unwrap();
        let nu_star = lp::solve_primal(&g).unwrap().objective;
        assert!(int(cert.matching.size() as i64) * int(7) >= cert.y.total() * int(3));
        assert!(int(cert.matching.size() as i64) * int(7) >= nu_star * int(3));
    }

    #[test]
    fn head_selection() {
        assert_eq!(select_head(&gen_path(3).unwrap()).unwrap(), (0, 1));
        assert_eq!(select_head(&gen_star(3).unwrap()).unwrap(), (1, 0));
        assert_eq!(select_head(&gen_cycle(5).unwrap()).unwrap(), (0, 1));
        assert!(select_head(&Graph::empty(0)).is_err());
    }

    #[test]
    fn head_shapes() {
        let p5 = gen_path(5).unwrap();
        let head = build_head(&p5, 0, 1).unwrap();
        assert_eq!(head.h.vertices.new_to_old(), &[0, 1, 2]);
        assert!(head.isolates.is_empty());
        assert_eq!(head.boundary, vec![2]);

        let p4 = gen_path(4).unwrap();
        let head = build_head(&p4, 0, 1).unwrap();
        assert_eq!(head.h.vertices.new_to_old(), &[0, 1, 2, 3]);
        assert_eq!(head.isolates, vec![3]);

        let star = gen_star(3).unwrap();
        let head = build_head(&star, 1, 0).unwrap();
        assert_eq!(head.h.graph.n(), 4);
        assert!(head.isolates.is_empty());
        assert!(build_head(&p4, 0, 2).is_err());
    }

    #[test]
    fn head_dual_examples() {
        let k2 = gen_path(2).unwrap();
        assert_eq!(
            assign_head_duals(&build_head(&k2, 0, 1).unwrap()).unwrap().values(),
            &[int(1)]
        );

        let claw = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let y = assign_head_duals(&build_head(&claw, 0, 1).unwrap()).unwrap();
        assert_eq!(y.values(), &[ratio(1, 3), ratio(2, 3), ratio(2, 3)]);

        let triangle = gen_complete(3).unwrap();
        let y = assign_head_duals(&build_head(&triangle, 0, 1).unwrap()).unwrap();
        assert_eq!(y.total(), int(1));
    }

    #[test]
    fn rejects_out_of_scope_graphs() {
        assert!(matches!(
            subcubic_primal_dual(&gen_complete(4).unwrap()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            subcubic_primal_dual(&gen_star(4).unwrap()),
            Err(Error::Precondition(_))
        ));
        let k4_and_edge = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)]).unwrap();
        assert!(subcubic_primal_dual(&k4_and_edge).is_err());
    }

    #[test]
    fn isolated_vertices_are_ignored() {
        let g = Graph::new(5, [(1, 2), (2, 3)]).unwrap();
        let cert = subcubic_primal_dual(&g).unwrap();
        assert_eq!(cert.matching.size(), 1);
        assert_eq!(subcubic_primal_dual(&Graph::empty(3)).unwrap().matching.size(), 0);
    }
}
