//! The fractional induced-matching program and its dual:
//!
//! ```text
//! (P) max Σ x_e  s.t. x(δ(e)) ≤ 1 ∀e, x ≥ 0
//! (D) min Σ y_e  s.t. y(δ(e)) ≥ 1 ∀e, y ≥ 0
//! ```
//!
//! Both are solved exactly, component by component. The primal goes through
//! primal simplex, the dual through dual simplex on its own tableau, so the
//! strong-duality equality checked in the tests compares two independent
//! computations.

use std::fmt::Write as _;
use std::ops::Index;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeMap, Graph};
use crate::rational::{self, Rational};
use crate::simplex;

/// One exact nonnegative weight per edge id; used for both `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeWeights(#[serde(with = "rational::string_vec")] Vec<Rational>);

impl EdgeWeights {
    pub fn zeros(m: usize) -> Self {
        Self(vec![Rational::zero(); m])
    }

    pub fn uniform(m: usize, value: Rational) -> Self {
        Self(vec![value; m])
    }

    pub fn from_vec(values: Vec<Rational>) -> Self {
        Self(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub fn set(&mut self, e: EdgeId, value: Rational) {
        self.0[e] = value;
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `w(F)`.
    pub fn sum_over(&self, edges: &[EdgeId]) -> Rational {
        edges.iter().map(|&e| &self.0[e]).sum()
    }

    /// Pulls weights of a parent graph back onto a derived graph.
    pub fn restrict(&self, map: &EdgeMap) -> EdgeWeights {
        EdgeWeights(map.new_to_old().iter().map(|&e| self.0[e].clone()).collect())
    }

    pub fn bind(&self, g: &Graph) -> Result<()> {
        if self.len() != g.m() {
            return Err(Error::DimensionMismatch {
                expected: g.m(),
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl Index<EdgeId> for EdgeWeights {
    type Output = Rational;

    fn index(&self, e: EdgeId) -> &Rational {
        &self.0[e]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Program {
    Primal,
    Dual,
}

/// Optimal solution of (P) or (D).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpSolution {
    pub weights: EdgeWeights,
    #[serde(with = "rational::string")]
    pub objective: Rational,
    pub program: Program,
}

/// `w(F) = Σ_{e∈F} w_e`.
pub fn weight_sum(w: &EdgeWeights, edges: &[EdgeId]) -> Result<Rational> {
    if let Some(&bad) = edges.iter().find(|&&e| e >= w.len()) {
        return Err(Error::InvalidEdge(bad));
    }
    Ok(w.sum_over(edges))
}

/// `x(δ(e))` for every edge, in edge order.
pub fn neighborhood_loads(g: &Graph, w: &EdgeWeights) -> Vec<Rational> {
    (0..g.m())
        .map(|e| {
            let (u, v) = g.edges()[e];
            // δ(u) and δ(v) share exactly e
            w.sum_over(g.incident(u)) + w.sum_over(g.incident(v)) - &w[e]
        })
        .collect()
}

pub fn check_primal_feasible(g: &Graph, x: &EdgeWeights) -> Result<bool> {
    x.bind(g)?;
    if x.values().iter().any(Signed::is_negative) {
        return Ok(false);
    }
    let one = rational::one();
    Ok(neighborhood_loads(g, x).iter().all(|load| *load <= one))
}

pub fn check_dual_feasible(g: &Graph, y: &EdgeWeights) -> Result<bool> {
    y.bind(g)?;
    if y.values().iter().any(Signed::is_negative) {
        return Ok(false);
    }
    let one = rational::one();
    Ok(neighborhood_loads(g, y).iter().all(|load| *load >= one))
}

/// Row `e` of the constraint matrix: indicator of `δ(e)`. The matrix is
/// symmetric, so it serves both programs.
fn constraint_matrix(g: &Graph) -> Vec<Vec<Rational>> {
    let m = g.m();
    (0..m)
        .map(|e| {
            let mut row = vec![Rational::zero(); m];
            for f in g.edge_closed_neighborhood(e).expect("edge id in range") {
                row[f] = rational::one();
            }
            row
        })
        .collect()
}

fn solve_by_component<F>(g: &Graph, program: Program, solve: F) -> Result<LpSolution>
where
    F: Fn(&[Vec<Rational>], &[Rational]) -> Result<simplex::Optimum>,
{
    let mut weights = EdgeWeights::zeros(g.m());
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced_subgraph(&comp)?;
        let a = constraint_matrix(&sub.graph);
        let ones = vec![rational::one(); sub.graph.m()];
        let opt = solve(&a, &ones)?;
        for (local, value) in opt.solution.into_iter().enumerate() {
            weights.set(sub.edges.to_old(local), value);
        }
    }
    let objective = weights.total();
    Ok(LpSolution {
        weights,
        objective,
        program,
    })
}

/// Optimal solution of (P); its objective is `ν*ₛ(G)`.
pub fn solve_primal(g: &Graph) -> Result<LpSolution> {
    let sol = solve_by_component(g, Program::Primal, |a, ones| simplex::maximize_packing(a, ones, ones))?;
    if !check_primal_feasible(g, &sol.weights)? {
        return Err(Error::Internal("primal simplex returned an infeasible point".into()));
    }
    Ok(sol)
}

/// Optimal solution of (D); its objective is `τ*ₛ(G)`.
pub fn solve_dual(g: &Graph) -> Result<LpSolution> {
    let sol = solve_by_component(g, Program::Dual, |a, ones| simplex::minimize_covering(a, ones, ones))?;
    if !check_dual_feasible(g, &sol.weights)? {
        return Err(Error::Internal("dual simplex returned an infeasible point".into()));
    }
    Ok(sol)
}

/// Writes (P) or (D) in CPLEX LP text for cross-checking with external
/// solvers. All coefficients and right-hand sides are 1.
pub fn lp_text(g: &Graph, program: Program) -> String {
    let (sense, op) = match program {
        Program::Primal => ("Maximize", "<="),
        Program::Dual => ("Minimize", ">="),
    };
    let var = |e: EdgeId| format!("x{e}");
    let mut out = String::new();
    let _ = writeln!(out, "\\ fractional induced matching, n = {}, m = {}", g.n(), g.m());
    let _ = writeln!(out, "{sense}");
    let objective: Vec<String> = (0..g.m()).map(var).collect();
    let _ = writeln!(
        out,
        " obj: {}",
        if objective.is_empty() {
            "0".into()
        } else {
            objective.join(" + ")
        }
    );
    let _ = writeln!(out, "Subject To");
    for e in 0..g.m() {
        let terms: Vec<String> = g
            .edge_closed_neighborhood(e)
            .expect("edge id in range")
            .into_iter()
            .map(var)
            .collect();
        let _ = writeln!(out, " c{e}: {} {op} 1", terms.join(" + "));
    }
    let _ = writeln!(out, "Bounds");
    for e in 0..g.m() {
        let _ = writeln!(out, " {} >= 0", var(e));
    }
    let _ = writeln!(out, "End");
    out
}
