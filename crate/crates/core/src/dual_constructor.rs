//! Constructive upper bound `ν*ₛ(G) ≤ Δ·n(G)/(2Δ+1)` for graphs of maximum
//! degree at most `Δ` without components of order at most 2.
//!
//! The construction builds a *good* dual solution `y`: feasible for (D),
//! `y(δ(u)) ≥ 1/2` at every vertex of degree below `Δ`, and
//! `y(E) ≤ Δn/(2Δ+1)` with equality exactly when every component is `T*`.
//! Each connected component is handled by one of three rules:
//!
//! * `Δ`-regular: uniform `1/(2Δ−1)`.
//! * a leaf `u` whose removal with its neighbor leaves no component of order
//!   at most 2 ([`CaseTag::LeafPath`]): delete `u`, its neighbor `v` and a
//!   second neighbor `w` of `v`, recurse, and put `1/2` on `uv`, `vw`, the
//!   edges of the order-2 leftovers and one connector per leftover.
//! * otherwise ([`CaseTag::Neighborhood`]): delete `N[u]` for a minimum-degree
//!   vertex `u`, recurse, and put `1/2` on `δ(u)`, the order-2 leftovers and
//!   one connector per leftover.
//!
//! When the default assignment meets the bound with equality on a component
//! that is not `T*`, it is rewritten by one of the alternative assignments
//! (the remaining [`CaseTag`] variants), which are strictly below the bound.

use std::collections::VecDeque;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Subgraph, VertexId};
use crate::lp::{self, EdgeWeights};
use crate::rational::{self, int, Rational};

/// `Δn/(2Δ+1)`.
pub fn theorem1_bound(n: usize, delta: usize) -> Rational {
    Rational::new(((delta * n) as i64).into(), ((2 * delta + 1) as i64).into())
}

/// Whether `g` is the star `K_{1,Δ}` with every edge subdivided once.
pub fn is_t_star(g: &Graph, delta: usize) -> bool {
    if delta == 0 || g.n() != 2 * delta + 1 || g.m() != 2 * delta {
        return false;
    }
    (0..g.n()).any(|c| {
        g.degree(c) == delta
            && g.neighbors(c)
                .all(|mid| g.degree(mid) == 2 && g.neighbors(mid).any(|leaf| leaf != c && g.degree(leaf) == 1))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// Component is `Δ`-regular.
    Regular,
    /// Leaf rule, default assignment.
    LeafPath,
    /// Leaf rule at equality, `v` has a third neighbor in an order-2 leftover.
    LeafPathPairNeighbor,
    /// Leaf rule at equality, `v` has a third neighbor in a `T*` of the residual.
    LeafPathTStarNeighbor,
    /// Neighborhood rule, default assignment.
    Neighborhood,
    /// Neighborhood rule at equality (`δ = 2`, only order-2 leftovers).
    NeighborhoodPairsOnly,
}

/// One component handled at one recursion level. Vertex and edge ids refer
/// to the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseStep {
    pub depth: usize,
    pub tag: CaseTag,
    pub component_order: usize,
    pub component_size: usize,
    pub u: Option<VertexId>,
    pub min_degree: usize,
    pub v: Option<VertexId>,
    pub w: Option<VertexId>,
    pub w_degree: Option<usize>,
    /// Third neighbor of `v` used by the leaf-rule rewrites.
    pub y: Option<VertexId>,
    /// `I₁`: isolated vertices left after the deletion.
    pub isolated: Vec<VertexId>,
    /// `I₂`: vertices of order-2 components left after the deletion.
    pub paired: Vec<VertexId>,
    /// One connector edge per component of `G[I₁ ∪ I₂]`.
    pub connectors: Vec<EdgeId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTrace {
    pub steps: Vec<CaseStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodDual {
    pub y: EdgeWeights,
    pub delta_bound: usize,
    #[serde(with = "rational::string")]
    pub total: Rational,
}

/// Builds a good dual solution for `g` with respect to `delta` and checks
/// all of its defining properties before returning.
pub fn build_good_dual(g: &Graph, delta: usize) -> Result<(GoodDual, CaseTrace)> {
    if delta < 2 {
        return Err(Error::Precondition("delta must be at least 2".into()));
    }
    if g.max_degree() > delta {
        return Err(Error::Precondition(format!(
            "maximum degree {} exceeds delta = {delta}",
            g.max_degree()
        )));
    }
    if let Some(small) = g.components().into_iter().find(|c| c.len() <= 2) {
        return Err(Error::Precondition(format!("component {small:?} has order at most 2")));
    }
    let (values, steps) = solve_graph(g, delta, 0)?;
    let y = EdgeWeights::from_vec(values);
    let total = y.total();

    if !lp::check_dual_feasible(g, &y)? {
        return Err(Error::Internal("constructed dual is infeasible".into()));
    }
    let half = rational::ratio(1, 2);
    for u in 0..g.n() {
        if g.degree(u) < delta && y.sum_over(g.incident(u)) < half {
            return Err(Error::Internal(format!("vertex {u} receives less than 1/2")));
        }
    }
    if total > theorem1_bound(g.n(), delta) {
        return Err(Error::Internal("constructed dual exceeds the bound".into()));
    }
    Ok((
        GoodDual {
            y,
            delta_bound: delta,
            total,
        },
        CaseTrace { steps },
    ))
}

type Solved = (Vec<Rational>, Vec<CaseStep>);

fn solve_graph(g: &Graph, delta: usize, depth: usize) -> Result<Solved> {
    let mut y = vec![Rational::zero(); g.m()];
    let mut steps = Vec::new();
    for comp in g.components() {
        if comp.len() <= 2 {
            return Err(Error::Internal(format!("recursed on small component {comp:?}")));
        }
        let sub = g.induced_subgraph(&comp)?;
        let (local, local_steps) = solve_connected(&sub.graph, delta, depth)?;
        lift(&sub, local, local_steps, &mut y, &mut steps);
    }
    Ok((y, steps))
}

/// Writes the solution of a subgraph back into its parent's ids.
fn lift(
    sub: &Subgraph,
    local: Vec<Rational>,
    local_steps: Vec<CaseStep>,
    y: &mut [Rational],
    steps: &mut Vec<CaseStep>,
) {
    for (e, value) in local.into_iter().enumerate() {
        y[sub.edges.to_old(e)] = value;
    }
    let vmap = |v: VertexId| sub.vertices.to_old(v);
    for mut s in local_steps {
        s.u = s.u.map(vmap);
        s.v = s.v.map(vmap);
        s.w = s.w.map(vmap);
        s.y = s.y.map(vmap);
        s.isolated.iter_mut().for_each(|v| *v = vmap(*v));
        s.paired.iter_mut().for_each(|v| *v = vmap(*v));
        s.connectors.iter_mut().for_each(|e| *e = sub.edges.to_old(*e));
        steps.push(s);
    }
}

/// Components of a residual split by order.
struct Leftovers {
    isolated: Vec<VertexId>,
    paired: Vec<VertexId>,
    /// Components of order 1 or 2, by smallest vertex.
    small: Vec<Vec<VertexId>>,
    rest: Vec<VertexId>,
}

fn split_leftovers(residual: &Subgraph) -> Leftovers {
    let mut out = Leftovers {
        isolated: Vec::new(),
        paired: Vec::new(),
        small: Vec::new(),
        rest: Vec::new(),
    };
    for comp in residual.graph.components() {
        let comp: Vec<VertexId> = comp.iter().map(|&v| residual.vertices.to_old(v)).collect();
        match comp.len() {
            1 => out.isolated.extend(&comp),
            2 => out.paired.extend(&comp),
            _ => {
                out.rest.extend(&comp);
                continue;
            }
        }
        out.small.push(comp);
    }
    out.isolated.sort_unstable();
    out.paired.sort_unstable();
    out.rest.sort_unstable();
    out
}

/// Recursive solution on `G[rest]`, embedded into the edges of `g`.
fn solve_rest(
    g: &Graph,
    rest: &[VertexId],
    delta: usize,
    depth: usize,
    steps: &mut Vec<CaseStep>,
) -> Result<(Vec<Rational>, Subgraph)> {
    let mut y = vec![Rational::zero(); g.m()];
    let sub = g.induced_subgraph(rest)?;
    let (local, local_steps) = solve_graph(&sub.graph, delta, depth + 1)?;
    lift(&sub, local, local_steps, &mut y, steps);
    Ok((y, sub))
}

/// Lowest-id edge joining one of `sources` to the vertex set `target`.
fn connector(g: &Graph, sources: &[VertexId], target: &[VertexId]) -> Result<EdgeId> {
    sources
        .iter()
        .flat_map(|&s| g.incident(s).iter().map(move |&e| (e, s)))
        .filter(|&(e, s)| target.contains(&g.other_end(e, s)))
        .map(|(e, _)| e)
        .min()
        .ok_or_else(|| Error::Internal(format!("no edge from {sources:?} to {target:?}")))
}

fn pair_edges(g: &Graph, small: &[Vec<VertexId>]) -> Vec<EdgeId> {
    small
        .iter()
        .filter(|c| c.len() == 2)
        .map(|c| g.edge_between(c[0], c[1]).expect("order-2 component is an edge"))
        .collect()
}

fn set_half(y: &mut [Rational], edges: impl IntoIterator<Item = EdgeId>) {
    let half = rational::ratio(1, 2);
    for e in edges {
        y[e] = half.clone();
    }
}

fn total(y: &[Rational]) -> Rational {
    y.iter().sum()
}

fn solve_connected(g: &Graph, delta: usize, depth: usize) -> Result<Solved> {
    let mut steps = Vec::new();
    let step = |tag| CaseStep {
        depth,
        tag,
        component_order: g.n(),
        component_size: g.m(),
        u: None,
        min_degree: g.min_degree().unwrap_or(0),
        v: None,
        w: None,
        w_degree: None,
        y: None,
        isolated: Vec::new(),
        paired: Vec::new(),
        connectors: Vec::new(),
    };

    if g.is_regular(delta) {
        let uniform = Rational::new(1.into(), ((2 * delta - 1) as i64).into());
        steps.push(step(CaseTag::Regular));
        return Ok((vec![uniform; g.m()], steps));
    }

    let bound = theorem1_bound(g.n(), delta);
    let min_degree = g.min_degree().expect("component is nonempty");
    let u = (0..g.n()).find(|&v| g.degree(v) == min_degree).unwrap();
    let mut closed = g.sorted_neighbors(u);
    closed.push(u);
    let without_closed = g.delete_vertices(&closed)?;
    let leaf_rule = min_degree == 1 && without_closed.graph.components().iter().all(|c| c.len() >= 3);

    if leaf_rule {
        let v = g.neighbors(u).next().unwrap();
        let w = g
            .sorted_neighbors(v)
            .into_iter()
            .find(|&x| x != u)
            .ok_or_else(|| Error::Internal("leaf neighbor has no second neighbor".into()))?;
        let residual = g.delete_vertices(&[u, v, w])?;
        let left = split_leftovers(&residual);
        let (mut y, rest_graph) = solve_rest(g, &left.rest, delta, depth, &mut steps)?;
        let recursive = y.clone();
        let uv = g.edge_between(u, v).unwrap();
        let vw = g.edge_between(v, w).unwrap();
        let connectors = left
            .small
            .iter()
            .map(|comp| connector(g, &[w], comp))
            .collect::<Result<Vec<_>>>()?;
        let pairs = pair_edges(g, &left.small);
        set_half(&mut y, connectors.iter().chain(&pairs).copied().chain([uv, vw]));

        let mut record = step(CaseTag::LeafPath);
        record.u = Some(u);
        record.v = Some(v);
        record.w = Some(w);
        record.w_degree = Some(g.degree(w));
        record.isolated = left.isolated.clone();
        record.paired = left.paired.clone();
        record.connectors = connectors;

        if total(&y) == bound && !is_t_star(g, delta) {
            if !left.isolated.is_empty() || left.paired.len() != 2 * (delta - 1) || g.degree(w) != delta {
                return Err(Error::Internal("leaf rule equality without its structure".into()));
            }
            let others: Vec<VertexId> = g
                .sorted_neighbors(v)
                .into_iter()
                .filter(|&x| x != u && x != w)
                .collect();
            if let Some(&third) = others.iter().find(|x| left.paired.contains(x)) {
                // v takes over the leftover containing its third neighbor; vw drops out
                let mut y = recursive;
                let vy = g.edge_between(v, third).unwrap();
                let mut connectors = Vec::new();
                for comp in &left.small {
                    if comp.contains(&third) {
                        connectors.push(vy);
                    } else {
                        connectors.push(connector(g, &[v, w], comp)?);
                    }
                }
                set_half(&mut y, connectors.iter().chain(&pairs).copied().chain([uv]));
                record.tag = CaseTag::LeafPathPairNeighbor;
                record.y = Some(third);
                record.connectors = connectors;
                return finish(y, steps, record, &bound);
            }
            let &third = others
                .first()
                .ok_or_else(|| Error::Internal("equality without a third neighbor of v".into()))?;
            if !left.rest.contains(&third) {
                return Err(Error::Internal("third neighbor of v outside the residual".into()));
            }
            let y = reroute_through_t_star(g, delta, &rest_graph, recursive, third, u, v, w, &pairs)?;
            record.tag = CaseTag::LeafPathTStarNeighbor;
            record.y = Some(third);
            record.connectors = Vec::new();
            return finish(y, steps, record, &bound);
        }
        return finish(y, steps, record, &bound);
    }

    let neighbors = g.sorted_neighbors(u);
    let left = split_leftovers(&without_closed);
    let (mut y, _) = solve_rest(g, &left.rest, delta, depth, &mut steps)?;
    let connectors = left
        .small
        .iter()
        .map(|comp| connector(g, &neighbors, comp))
        .collect::<Result<Vec<_>>>()?;
    let pairs = pair_edges(g, &left.small);
    set_half(&mut y, connectors.iter().chain(&pairs).chain(g.incident(u)).copied());

    let mut record = step(CaseTag::Neighborhood);
    record.u = Some(u);
    record.isolated = left.isolated.clone();
    record.paired = left.paired.clone();
    record.connectors = connectors;

    if total(&y) == bound && !is_t_star(g, delta) {
        if min_degree != 2 || !left.isolated.is_empty() || left.paired.len() != 2 * (delta - 1) || !left.rest.is_empty()
        {
            return Err(Error::Internal(
                "neighborhood rule equality without its structure".into(),
            ));
        }
        let dropped = g.incident(u)[0];
        let mut y = vec![Rational::zero(); g.m()];
        let into_pairs: Vec<EdgeId> = neighbors
            .iter()
            .flat_map(|&x| g.incident(x).iter().map(move |&e| (e, x)))
            .filter(|&(e, x)| left.paired.contains(&g.other_end(e, x)))
            .map(|(e, _)| e)
            .collect();
        set_half(
            &mut y,
            into_pairs
                .into_iter()
                .chain(g.incident(u).iter().copied().filter(|&e| e != dropped)),
        );
        record.tag = CaseTag::NeighborhoodPairsOnly;
        record.connectors = Vec::new();
        return finish(y, steps, record, &bound);
    }
    finish(y, steps, record, &bound)
}

/// Leaf-rule rewrite when `v`'s third neighbor lies in a `T*` component `H`
/// of the residual: `H` is re-weighted with `1/2` on all edges but the
/// center edge `f` nearest to the third neighbor.
#[allow(clippy::too_many_arguments)]
fn reroute_through_t_star(
    g: &Graph,
    delta: usize,
    rest_graph: &Subgraph,
    mut y: Vec<Rational>,
    third: VertexId,
    u: VertexId,
    v: VertexId,
    w: VertexId,
    pairs: &[EdgeId],
) -> Result<Vec<Rational>> {
    let start = rest_graph.vertices.to_new(third).unwrap();
    let comp = rest_graph
        .graph
        .components()
        .into_iter()
        .find(|c| c.contains(&start))
        .unwrap();
    let h = rest_graph.graph.induced_subgraph(&comp)?;
    if !is_t_star(&h.graph, delta) {
        return Err(Error::Internal("component at equality is not T*".into()));
    }
    let center = (0..h.graph.n())
        .find(|&c| h.graph.degree(c) == delta && h.graph.neighbors(c).all(|m| h.graph.degree(m) == 2))
        .unwrap();
    let source = h.vertices.to_new(start).unwrap();
    let dist = bfs(&h.graph, source);
    let nearest = h
        .graph
        .incident(center)
        .iter()
        .copied()
        .min_by_key(|&e| (dist[h.graph.other_end(e, center)], e))
        .unwrap();
    let to_g = |e: EdgeId| rest_graph.edges.to_old(h.edges.to_old(e));
    let f = to_g(nearest);
    let h_edges: Vec<EdgeId> = (0..h.graph.m()).map(to_g).collect();
    for &e in &h_edges {
        y[e] = Rational::zero();
    }
    let vw = g.edge_between(v, w).unwrap();
    let from_w = g.incident(w).iter().copied().filter(|&e| e != vw);
    let uv = g.edge_between(u, v).unwrap();
    let vy = g.edge_between(v, third).unwrap();
    set_half(
        &mut y,
        pairs
            .iter()
            .copied()
            .chain(from_w)
            .chain([uv, vy])
            .chain(h_edges.into_iter().filter(|&e| e != f)),
    );
    Ok(y)
}

fn bfs(g: &Graph, source: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for z in g.neighbors(x) {
            if dist[z] == usize::MAX {
                dist[z] = dist[x] + 1;
                queue.push_back(z);
            }
        }
    }
    dist
}

fn finish(y: Vec<Rational>, mut steps: Vec<CaseStep>, record: CaseStep, bound: &Rational) -> Result<Solved> {
    let rewritten = !matches!(record.tag, CaseTag::LeafPath | CaseTag::Neighborhood);
    if rewritten && total(&y) >= *bound {
        return Err(Error::Internal(format!(
            "{:?} rewrite does not beat the bound",
            record.tag
        )));
    }
    steps.push(record);
    Ok((y, steps))
}

/// Weight a step places on the edges of its component, net of any
/// recursive weight it overrides, recomputed from the recorded sizes alone.
pub fn step_weight(step: &CaseStep, delta: usize) -> Rational {
    let half = |k: usize| Rational::new((k as i64).into(), 2.into());
    let (i1, i2) = (step.isolated.len(), step.paired.len());
    match step.tag {
        CaseTag::Regular => Rational::new((step.component_size as i64).into(), ((2 * delta - 1) as i64).into()),
        CaseTag::LeafPath => half(i1 + i2 + 2),
        CaseTag::LeafPathPairNeighbor => half(i1 + i2 + 1),
        // pairs, δ(w)−vw, uv, vy and 2Δ−1 edges of the T*, minus its old weight Δ
        CaseTag::LeafPathTStarNeighbor => {
            half(i2 / 2 + step.w_degree.unwrap_or(0) - 1 + 2 + 2 * delta - 1) - int(delta as i64)
        }
        CaseTag::Neighborhood => half(i1 + i2 + step.min_degree),
        CaseTag::NeighborhoodPairsOnly => half(i2 + step.min_degree - 1),
    }
}
