//! Instance families: the subdivided star `T*`, the blown-up `C₅`, and
//! plain test families, plus the conjectured integrality-gap bound and its
//! fractional witnesses.

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{self, EdgeWeights};
use crate::oracle;
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    TStar,
    BlownupC5,
    RandomBounded,
    Path,
    Cycle,
    Complete,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::TStar => "t_star",
            Family::BlownupC5 => "blownup_c5",
            Family::RandomBounded => "random_bounded",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
        }
    }
}

/// Parameters of one reproducible instance. `delta` is ignored by the
/// path, cycle and complete families; `n` by `t_star` and `blownup_c5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub family: Family,
    #[serde(default)]
    pub delta: usize,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(family: Family, delta: usize, n: usize, seed: u64) -> Self {
        Self { family, delta, n, seed }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Precondition(format!("{}: {why}", self.family.name())));
        match self.family {
            Family::TStar if self.delta < 1 => bad("needs delta >= 1"),
            Family::BlownupC5 if self.delta < 2 => bad("needs delta >= 2"),
            Family::RandomBounded if self.n < 1 || self.delta < 1 => bad("needs n >= 1 and delta >= 1"),
            Family::Cycle if self.n < 3 => bad("needs n >= 3"),
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        match self.family {
            Family::TStar => gen_t_star(self.delta),
            Family::BlownupC5 => gen_blownup_c5(self.delta),
            Family::RandomBounded => gen_random_bounded(self.n, self.delta, self.seed),
            Family::Path => gen_path(self.n),
            Family::Cycle => gen_cycle(self.n),
            Family::Complete => gen_complete(self.n),
        }
    }
}

/// `K_{1,Δ}` with every edge subdivided once. Vertex 0 is the center,
/// `1..=Δ` the subdivision vertices, `Δ+1..=2Δ` the leaves; edges `0..Δ`
/// are center edges and `Δ..2Δ` leaf edges.
pub fn gen_t_star(delta: usize) -> Result<Graph> {
    if delta < 1 {
        return Err(Error::Precondition("t_star needs delta >= 1".into()));
    }
    let spokes = (1..=delta).map(|i| (0, i));
    let tails = (1..=delta).map(|i| (i, delta + i));
    Graph::new(2 * delta + 1, spokes.chain(tails))
}

/// Class sizes of the blown-up `C₅` in cyclic order.
pub fn blownup_class_sizes(delta: usize) -> [usize; 5] {
    let (lo, hi) = (delta / 2, delta.div_ceil(2));
    [lo, lo, lo, hi, hi]
}

/// `C₅` with its vertices replaced by independent sets of sizes
/// `⌊Δ/2⌋, ⌊Δ/2⌋, ⌊Δ/2⌋, ⌈Δ/2⌉, ⌈Δ/2⌉`, consecutive classes completely
/// joined. Vertex ids are assigned class by class.
pub fn gen_blownup_c5(delta: usize) -> Result<Graph> {
    if delta < 2 {
        return Err(Error::Precondition("blownup_c5 needs delta >= 2".into()));
    }
    let sizes = blownup_class_sizes(delta);
    let classes = blownup_classes(&sizes);
    let mut edges = Vec::new();
    for i in 0..5 {
        for &a in &classes[i] {
            for &b in &classes[(i + 1) % 5] {
                edges.push((a, b));
            }
        }
    }
    let g = Graph::new(sizes.iter().sum(), edges)?;
    if g.max_degree() != delta {
        return Err(Error::Internal(format!(
            "blown-up C5 has maximum degree {} instead of {delta}",
            g.max_degree()
        )));
    }
    Ok(g)
}

fn blownup_classes(sizes: &[usize; 5]) -> Vec<Vec<usize>> {
    let mut next = 0;
    sizes
        .iter()
        .map(|&s| {
            let class = (next..next + s).collect();
            next += s;
            class
        })
        .collect()
}

pub fn gen_path(n: usize) -> Result<Graph> {
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition("cycle needs n >= 3".into()));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn gen_complete(n: usize) -> Result<Graph> {
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// `K_{1,k}` with center 0.
pub fn gen_star(k: usize) -> Result<Graph> {
    Graph::new(k + 1, (1..=k).map(|i| (0, i)))
}

/// Shuffles all vertex pairs with a seeded ChaCha8 stream and accepts a
/// pair whenever both endpoints still have degree below `delta`.
pub fn gen_random_bounded(n: usize, delta: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if degree[u] < delta && degree[v] < delta {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    Graph::new(n, edges)
}

/// The conjectured worst-case ratio `ν*ₛ/νₛ` for maximum degree `Δ`:
/// `5Δ²/(8Δ−4)` for even `Δ`, `(5Δ³−21Δ²+7Δ+1)/(8Δ²−36Δ+20)` for odd `Δ`.
pub fn conjecture_gap_bound(delta: usize) -> Result<Rational> {
    if delta < 2 {
        return Err(Error::Precondition("gap bound needs delta >= 2".into()));
    }
    let d = delta as i64;
    if d % 2 == 0 {
        return Ok(Rational::new((5 * d * d).into(), (8 * d - 4).into()));
    }
    let den = 8 * d * d - 36 * d + 20;
    if den == 0 {
        return Err(Error::Internal(format!(
            "odd gap formula has zero denominator at {delta}"
        )));
    }
    let num = 5 * d * d * d - 21 * d * d + 7 * d + 1;
    Ok(Rational::new(num.into(), den.into()))
}

/// The fractional solution of `(P)` on the blown-up `C₅` whose value is the
/// conjectured bound. Even `Δ`: uniform `1/(2Δ−1)`. Odd `Δ`: `(Δ−5)/(2Δ²−9Δ+5)`
/// between a class of size `(Δ−1)/2` and one of size `(Δ+1)/2`, and
/// `(Δ−3)/(2Δ²−9Δ+5)` on all other edges. Nonnegativity, feasibility and the
/// objective value are all checked before returning.
pub fn blowup_optimal_primal(delta: usize) -> Result<EdgeWeights> {
    let g = gen_blownup_c5(delta)?;
    let d = delta as i64;
    let x = if d % 2 == 0 {
        EdgeWeights::uniform(g.m(), Rational::new(1.into(), (2 * d - 1).into()))
    } else {
        let den = 2 * d * d - 9 * d + 5;
        if den == 0 {
            return Err(Error::Precondition(format!("odd formula undefined at delta = {delta}")));
        }
        let mixed = Rational::new((d - 5).into(), den.into());
        let rest = Rational::new((d - 3).into(), den.into());
        if mixed.is_negative() || rest.is_negative() {
            return Err(Error::Precondition(format!("odd formula negative at delta = {delta}")));
        }
        let sizes = blownup_class_sizes(delta);
        let classes = blownup_classes(&sizes);
        let class_of = |v: usize| classes.iter().position(|c| c.contains(&v)).unwrap();
        let weights = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                if sizes[class_of(u)] != sizes[class_of(v)] {
                    mixed.clone()
                } else {
                    rest.clone()
                }
            })
            .collect();
        EdgeWeights::from_vec(weights)
    };
    if !lp::check_primal_feasible(&g, &x)? {
        return Err(Error::Precondition(format!(
            "closed-form solution infeasible at delta = {delta}"
        )));
    }
    if x.total() != conjecture_gap_bound(delta)? {
        return Err(Error::Internal(format!(
            "closed-form objective differs from the gap bound at delta = {delta}"
        )));
    }
    Ok(x)
}

/// Exact integrality gap `ν*ₛ(G)/νₛ(G)`.
pub fn measure_gap(g: &Graph, cap: usize) -> Result<Rational> {
    if g.m() == 0 {
        return Err(Error::Precondition("gap undefined on an edgeless graph".into()));
    }
    let (nu_s, _) = oracle::exact_nu_s(g, cap)?;
    let nu_s_star = lp::solve_primal(g)?.objective;
    debug_assert!(!nu_s_star.is_zero());
    Ok(nu_s_star / int(nu_s as i64))
}
