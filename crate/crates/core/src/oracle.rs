//! Exact ground truth for small instances: `νₛ(G)` as a maximum independent
//! set of the conflict graph `L²(G)`, and the matching number `ν(G)` as a
//! maximum independent set of the line graph. Both go through the same
//! bitset branch and bound with a greedy clique-cover bound.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, InducedMatching};
use crate::lp::EdgeWeights;
use crate::rational;

pub const DEFAULT_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// The square of the line graph: one vertex per edge of the source graph,
/// `e ~ f` iff `f ∈ C(e)` (adjacent or joined by an edge).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    adjacency: Vec<Vec<EdgeId>>,
}

impl ConflictGraph {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, e: EdgeId) -> &[EdgeId] {
        &self.adjacency[e]
    }

    pub fn adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        self.adjacency[e].binary_search(&f).is_ok()
    }

    /// As a [`Graph`] on the edge ids of the source.
    pub fn to_graph(&self) -> Graph {
        let mut pairs = Vec::new();
        for (e, adj) in self.adjacency.iter().enumerate() {
            pairs.extend(adj.iter().filter(|&&f| f > e).map(|&f| (e, f)));
        }
        Graph::new(self.len(), pairs).expect("conflict relation is simple")
    }

    fn bitsets(&self) -> Vec<Bits> {
        bitsets(&self.adjacency)
    }
}

fn bitsets(adjacency: &[Vec<usize>]) -> Vec<Bits> {
    adjacency
        .iter()
        .map(|adj| {
            let mut b = Bits::new(adjacency.len());
            for &f in adj {
                b.insert(f);
            }
            b
        })
        .collect()
}

pub fn build_conflict_graph(g: &Graph) -> ConflictGraph {
    let m = g.m();
    let mut adjacency = vec![Vec::new(); m];
    for e in 0..m {
        for f in g.conflict_set(e).expect("edge id in range") {
            if f != e {
                adjacency[e].push(f);
                adjacency[f].push(e);
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
        adj.dedup();
    }
    ConflictGraph { adjacency }
}

/// Greedy clique cover of `cand`; its size bounds the independence number.
fn clique_cover_bound(cand: &Bits, adj: &[Bits]) -> usize {
    let mut cliques: Vec<Bits> = Vec::new();
    'outer: for v in cand.iter() {
        for common in cliques.iter_mut() {
            if common.contains(v) {
                *common = common.and(&adj[v]);
                continue 'outer;
            }
        }
        cliques.push(adj[v].and(cand));
    }
    cliques.len()
}

fn branch(cand: Bits, current: &mut Vec<usize>, best: &mut Vec<usize>, adj: &[Bits]) {
    let Some(v) = cand.first() else {
        if current.len() > best.len() {
            best.clone_from(current);
        }
        return;
    };
    if current.len() + clique_cover_bound(&cand, adj) <= best.len() {
        return;
    }
    let mut closed = adj[v].clone();
    closed.insert(v);
    current.push(v);
    branch(cand.minus(&closed), current, best, adj);
    current.pop();
    // a vertex with no candidate neighbor always belongs to some optimum
    if adj[v].intersects(&cand) {
        let mut rest = cand;
        rest.remove(v);
        branch(rest, current, best, adj);
    }
}

fn maximum_independent_set(adj: &[Bits]) -> Vec<usize> {
    let mut best = Vec::new();
    let all = Bits::full(adj.len());
    if !all.is_empty() {
        branch(all, &mut Vec::new(), &mut best, adj);
    }
    best.sort_unstable();
    best
}

fn check_cap(m: usize, cap: usize) -> Result<()> {
    if m > cap {
        return Err(Error::CapExceeded { size: m, cap });
    }
    Ok(())
}

/// `νₛ(G)` with a maximum induced matching as witness.
pub fn exact_nu_s(g: &Graph, cap: usize) -> Result<(usize, InducedMatching)> {
    check_cap(g.m(), cap)?;
    let adj = build_conflict_graph(g).bitsets();
    let best = maximum_independent_set(&adj);
    let witness = InducedMatching::new(g, best)?;
    Ok((witness.size(), witness))
}

/// `ν(G)` with a maximum matching as witness.
pub fn exact_matching(g: &Graph, cap: usize) -> Result<Vec<EdgeId>> {
    check_cap(g.m(), cap)?;
    let mut line = vec![Vec::new(); g.m()];
    for (e, adj) in line.iter_mut().enumerate() {
        let (u, v) = g.edges()[e];
        adj.extend(g.incident(u).iter().chain(g.incident(v)).copied().filter(|&f| f != e));
    }
    Ok(maximum_independent_set(&bitsets(&line)))
}

pub fn exact_matching_number(g: &Graph, cap: usize) -> Result<usize> {
    exact_matching(g, cap).map(|m| m.len())
}

/// `x_e = 1/2` on the matching, 0 elsewhere: always feasible for (P).
pub fn half_matching_primal(g: &Graph, matching: &[EdgeId]) -> Result<EdgeWeights> {
    if !g.is_matching(matching)? {
        return Err(Error::Precondition(format!("{matching:?} is not a matching")));
    }
    let mut x = EdgeWeights::zeros(g.m());
    for &e in matching {
        x.set(e, rational::ratio(1, 2));
    }
    Ok(x)
}
