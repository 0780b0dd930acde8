//! The `((1−ε)Δ + 1/2)`-approximation: solve (P) once, greedily take edges
//! whose conflict set carries at most `f` primal weight, and finish the
//! residual graph — where every conflict set carries more than `f` — with a
//! degree-greedy induced matching.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, InducedMatching, Subgraph, VertexId};
use crate::lp::{self, EdgeWeights};
use crate::rational::{self, int, ratio, Rational};
use crate::simplex;
use crate::subcubic::{self, PdCertificate};

pub fn default_epsilon() -> Rational {
    ratio(2005, 100000)
}

pub fn default_c() -> Rational {
    ratio(85838, 100000)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioParams {
    #[serde(with = "rational::string")]
    pub epsilon: Rational,
    #[serde(with = "rational::string")]
    pub c: Rational,
    /// `ε/(1−c)`.
    #[serde(with = "rational::string")]
    pub g_param: Rational,
    pub delta: usize,
    /// `(1−ε)Δ + 1/2`.
    #[serde(with = "rational::string")]
    pub f: Rational,
}

impl RatioParams {
    pub fn new(epsilon: Rational, c: Rational, delta: usize) -> Result<Self> {
        if delta < 3 {
            return Err(Error::Precondition("ratio parameters need delta >= 3".into()));
        }
        if !q_feasible(&epsilon, &c) {
            return Err(Error::Precondition(format!(
                "(ε, c) = ({}, {}) violates (Q)",
                rational::format(&epsilon),
                rational::format(&c)
            )));
        }
        let one = rational::one();
        let g_param = &epsilon / (&one - &c);
        let f = (&one - &epsilon) * int(delta as i64) + ratio(1, 2);
        Ok(Self {
            epsilon,
            c,
            g_param,
            delta,
            f,
        })
    }
}

pub fn default_params(delta: usize) -> Result<RatioParams> {
    RatioParams::new(default_epsilon(), default_c(), delta)
}

/// Right-hand side minus left-hand side of the two non-strict constraints
/// of (Q); `None` if the strict constraints fail.
pub fn q_slacks(epsilon: &Rational, c: &Rational) -> Option<(Rational, Rational)> {
    let one = rational::one();
    if !epsilon.is_positive() || !c.is_positive() || epsilon + c >= one {
        return None;
    }
    let inner = epsilon * (int(2) * c - &one + epsilon) / (&one - c - epsilon);
    let lhs = ratio(3, 2) * (&one + inner);
    let rhs = int(2) * c * (&one - epsilon);
    let square = (&one - c) * (&one - c);
    Some((rhs - lhs, square - epsilon))
}

/// All four constraints of (Q), evaluated exactly.
pub fn q_feasible(epsilon: &Rational, c: &Rational) -> bool {
    q_slacks(epsilon, c).is_some_and(|(a, b)| !a.is_negative() && !b.is_negative())
}

/// Outcome of a runtime check of an implication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Holds,
    /// Nothing to check (no edges, or no vertices the statement is about).
    Vacuous,
    PremiseFailed,
    Violated,
}

impl CheckOutcome {
    /// Everything except an actual counterexample.
    pub fn is_ok(self) -> bool {
        self != CheckOutcome::Violated
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprocessStep {
    pub edge: EdgeId,
    /// `x` on the conflict set removed with this edge.
    #[serde(with = "rational::string")]
    pub charge: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreprocessResult {
    pub matching: InducedMatching,
    /// Picked edges in order, with their charges.
    pub steps: Vec<PreprocessStep>,
    /// What is left, with maps into the input graph.
    pub residual: Subgraph,
    pub x: EdgeWeights,
    /// `x` over all removed edges.
    pub charge: Rational,
}

fn conflict_weight(g: &Graph, e: EdgeId, x_of: impl Fn(EdgeId) -> Rational) -> Rational {
    g.conflict_set(e).expect("edge id in range").into_iter().map(x_of).sum()
}

fn check_weights(g: &Graph, x: &EdgeWeights) -> Result<()> {
    x.bind(g)?;
    if !lp::check_primal_feasible(g, x)? {
        return Err(Error::Precondition("x is not feasible for (P)".into()));
    }
    Ok(())
}

fn check_degree(g: &Graph, delta: usize) -> Result<()> {
    if g.max_degree() > delta {
        return Err(Error::Precondition(format!(
            "maximum degree {} exceeds delta = {delta}",
            g.max_degree()
        )));
    }
    Ok(())
}

/// Repeatedly takes the lowest-id edge `e` of the current graph with
/// `x(C(e)) ≤ f` and deletes `C(e)`.
pub fn local_ratio_preprocess(g: &Graph, x: &EdgeWeights, params: &RatioParams) -> Result<PreprocessResult> {
    check_weights(g, x)?;
    check_degree(g, params.delta)?;
    let mut current = Subgraph::whole(g);
    let mut steps = Vec::new();
    loop {
        let x_of = |e: EdgeId| x[current.edges.to_old(e)].clone();
        let pick = (0..current.graph.m()).find(|&e| conflict_weight(&current.graph, e, x_of) <= params.f);
        let Some(e) = pick else {
            break;
        };
        let conflict = current.graph.conflict_set(e)?;
        let charge = conflict.iter().map(|&f| x_of(f)).sum();
        steps.push(PreprocessStep {
            edge: current.edges.to_old(e),
            charge,
        });
        let next = current.graph.remove_edges(&conflict)?;
        current = current.compose(next);
    }
    let kept: Vec<VertexId> = (0..current.graph.n())
        .filter(|&v| current.graph.degree(v) > 0)
        .collect();
    let residual = current.compose(current.graph.induced_subgraph(&kept)?);

    let charge: Rational = steps.iter().map(|s| &s.charge).sum();
    if charge > &params.f * int(steps.len() as i64) {
        return Err(Error::Internal("preprocessing charge exceeds f per pick".into()));
    }
    let matching = InducedMatching::new(g, steps.iter().map(|s| s.edge))?;
    Ok(PreprocessResult {
        matching,
        steps,
        residual,
        x: x.clone(),
        charge,
    })
}

/// Greedy induced matching: take the edge of minimum degree sum, or two
/// edges of its conflict set that form an induced matching when removing
/// both of their conflict sets costs at most twice as many edges; delete
/// the conflict sets and repeat. Fails unless `|M| ≥ m/(1.5Δ²)`.
pub fn residual_greedy(g: &Graph, delta: usize) -> Result<InducedMatching> {
    check_degree(g, delta)?;
    let mut current = Subgraph::whole(g);
    let mut picked = Vec::new();
    while current.graph.m() > 0 {
        let h = &current.graph;
        let degree_sum = |e: EdgeId| {
            let (a, b) = h.edges()[e];
            h.degree(a) + h.degree(b)
        };
        let uv = (0..h.m()).min_by_key(|&e| (degree_sum(e), e)).unwrap();
        let conflict = h.conflict_set(uv)?;
        let mut best: Option<(usize, [EdgeId; 2], Vec<EdgeId>)> = None;
        for (i, &e1) in conflict.iter().enumerate() {
            let c1 = h.conflict_set(e1)?;
            for &e2 in &conflict[i + 1..] {
                if e1 == uv || e2 == uv || c1.binary_search(&e2).is_ok() {
                    continue;
                }
                let mut union = c1.clone();
                union.extend(h.conflict_set(e2)?);
                union.sort_unstable();
                union.dedup();
                if union.len() <= 2 * conflict.len() && best.as_ref().is_none_or(|b| union.len() < b.0) {
                    best = Some((union.len(), [e1, e2], union));
                }
            }
        }
        let (taken, removed) = match best {
            Some((_, pair, union)) => (pair.to_vec(), union),
            None => (vec![uv], conflict),
        };
        picked.extend(taken.iter().map(|&e| current.edges.to_old(e)));
        let next = h.remove_edges(&removed)?;
        current = current.compose(next);
    }
    let matching = InducedMatching::new(g, picked)?;
    let d = delta.max(1) as i64;
    if int(3 * d * d) * int(matching.size() as i64) < int(2 * g.m() as i64) {
        return Err(Error::Internal(format!(
            "greedy found {} edges, below m/(1.5Δ²) for m = {}",
            matching.size(),
            g.m()
        )));
    }
    Ok(matching)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioCertificate {
    pub matching: InducedMatching,
    /// The optimal solution of (P) the preprocessing ran on.
    pub x: EdgeWeights,
    #[serde(with = "rational::string")]
    pub nu_s_star: Rational,
    #[serde(with = "rational::string")]
    pub f: Rational,
    /// `f·|M| ≥ ν*ₛ`.
    pub ratio_ok: bool,
    pub preprocess_trace: Vec<PreprocessStep>,
    /// Edges added by the greedy on the residual graph.
    pub residual_matching: Vec<EdgeId>,
}

pub fn approximate_fim(g: &Graph, delta: usize) -> Result<RatioCertificate> {
    let params = default_params(delta)?;
    check_degree(g, delta)?;
    let primal = lp::solve_primal(g)?;
    let pre = local_ratio_preprocess(g, &primal.weights, &params)?;
    let greedy = residual_greedy(&pre.residual.graph, delta)?;
    let residual_matching: Vec<EdgeId> = greedy.edges().iter().map(|&e| pre.residual.edges.to_old(e)).collect();
    let matching = InducedMatching::new(g, pre.matching.edges().iter().chain(&residual_matching).copied())?;
    let ratio_ok = &params.f * int(matching.size() as i64) >= primal.objective;
    if !ratio_ok {
        return Err(Error::Internal("approximation ratio not met".into()));
    }
    Ok(RatioCertificate {
        matching,
        x: primal.weights,
        nu_s_star: primal.objective,
        f: params.f,
        ratio_ok,
        preprocess_trace: pre.steps,
        residual_matching,
    })
}

/// `{u : d(u) < cΔ + 1/2}`.
pub fn low_degree_set(g: &Graph, params: &RatioParams) -> Vec<VertexId> {
    let threshold = &params.c * int(params.delta as i64) + ratio(1, 2);
    (0..g.n()).filter(|&u| int(g.degree(u) as i64) < threshold).collect()
}

fn premise_holds(g: &Graph, x: &EdgeWeights, params: &RatioParams) -> bool {
    (0..g.m()).all(|e| conflict_weight(g, e, |f| x[f].clone()) >= params.f)
}

/// If `x(C(e)) ≥ f` on every edge then `x(E) ≤ (1−ε)m/(1.5Δ)`.
pub fn lemma1_check(g: &Graph, x: &EdgeWeights, params: &RatioParams) -> Result<CheckOutcome> {
    check_weights(g, x)?;
    check_degree(g, params.delta)?;
    if g.m() == 0 {
        return Ok(CheckOutcome::Vacuous);
    }
    if !premise_holds(g, x, params) {
        return Ok(CheckOutcome::PremiseFailed);
    }
    let bound = (rational::one() - &params.epsilon) * int(g.m() as i64) / (ratio(3, 2) * int(params.delta as i64));
    Ok(if x.total() <= bound {
        CheckOutcome::Holds
    } else {
        CheckOutcome::Violated
    })
}

/// Under the premise of [`lemma1_check`]: every neighbor `v` of a vertex
/// in [`low_degree_set`] has `d(v) ≥ (1−g)Δ + 1` and `x(δ(v)) ≤ g`. A
/// failed premise is an error here, not an outcome.
pub fn claim1_check(g: &Graph, x: &EdgeWeights, params: &RatioParams) -> Result<CheckOutcome> {
    check_weights(g, x)?;
    check_degree(g, params.delta)?;
    if !premise_holds(g, x, params) {
        return Err(Error::Precondition("some edge has x(C(e)) < f".into()));
    }
    let low = low_degree_set(g, params);
    let min_degree = (rational::one() - &params.g_param) * int(params.delta as i64) + rational::one();
    let mut checked = false;
    for &u in &low {
        for v in g.neighbors(u) {
            checked = true;
            if int(g.degree(v) as i64) < min_degree || x.sum_over(g.incident(v)) > params.g_param {
                return Ok(CheckOutcome::Violated);
            }
        }
    }
    Ok(if checked {
        CheckOutcome::Holds
    } else {
        CheckOutcome::Vacuous
    })
}

/// Best available guarantee for the instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum Approximation {
    Subcubic(PdCertificate),
    LocalRatio(RatioCertificate),
}

impl Approximation {
    pub fn matching(&self) -> &InducedMatching {
        match self {
            Approximation::Subcubic(c) => &c.matching,
            Approximation::LocalRatio(c) => &c.matching,
        }
    }
}

/// The 7/3 primal-dual algorithm when `Δ ≤ 3` and no component is
/// 3-regular, the local-ratio pipeline with `Δ = max(3, Δ(G))` otherwise.
pub fn approximate(g: &Graph) -> Result<Approximation> {
    let cubic_component = g.components().iter().any(|c| c.iter().all(|&v| g.degree(v) == 3));
    if g.max_degree() <= 3 && !cubic_component {
        return subcubic::subcubic_primal_dual(g).map(Approximation::Subcubic);
    }
    approximate_fim(g, g.max_degree().max(3)).map(Approximation::LocalRatio)
}

/// `max_x min_e x(C(e))` over all feasible `x` of (P): no solution can meet
/// the premise of [`lemma1_check`] when this is below `f`.
pub fn conflict_weight_ceiling(g: &Graph) -> Result<Rational> {
    let m = g.m();
    if m == 0 {
        return Ok(Rational::zero());
    }
    let mut a = Vec::with_capacity(2 * m);
    let mut b = Vec::with_capacity(2 * m);
    for e in 0..m {
        let mut load = vec![Rational::zero(); m + 1];
        for f in g.edge_closed_neighborhood(e)? {
            load[f] = rational::one();
        }
        a.push(load);
        b.push(rational::one());
        // t − x(C(e)) ≤ 0
        let mut floor = vec![Rational::zero(); m + 1];
        for f in g.conflict_set(e)? {
            floor[f] = int(-1);
        }
        floor[m] = rational::one();
        a.push(floor);
        b.push(Rational::zero());
    }
    let mut c = vec![Rational::zero(); m + 1];
    c[m] = rational::one();
    Ok(simplex::maximize_packing(&a, &b, &c)?.value)
}

/// Sum over the picks of `x` on the part of the pick's conflict set in the
/// input graph not already claimed by earlier picks.
pub fn telescoped_charge(g: &Graph, x: &EdgeWeights, picks: &[EdgeId]) -> Result<Vec<Rational>> {
    let mut claimed = vec![false; g.m()];
    let mut out = Vec::with_capacity(picks.len());
    for &e in picks {
        let mut fresh = Rational::zero();
        for f in g.conflict_set(e)? {
            if !claimed[f] {
                claimed[f] = true;
                fresh += &x[f];
            }
        }
        out.push(fresh);
    }
    Ok(out)
}
