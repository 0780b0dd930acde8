//! Simple undirected graphs with dense vertex and edge ids, the edge
//! neighborhoods `δ(e)` and conflict sets `C(e)`, induced-matching checks and
//! the edge-list text format.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Immutable simple graph. Edge `i` is stored as `(u, v)` with `u < v`;
/// `incident[w]` lists the ids of edges at `w` in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    incident: Vec<Vec<EdgeId>>,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Edge ids follow the iteration order of
    /// `edges`; loops, duplicates and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut list = Vec::new();
        let mut seen = HashSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidVertex(a.max(b)));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {} {}", e.0, e.1)));
            }
            list.push(e);
        }
        Ok(Self::from_checked(n, list))
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_checked(n, Vec::new())
    }

    fn from_checked(n: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        let mut incident = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            incident[u].push(id);
            incident[v].push(id);
        }
        let max_degree = incident.iter().map(Vec::len).max().unwrap_or(0);
        Self {
            n,
            edges,
            incident,
            max_degree,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges.get(e).copied().ok_or(Error::InvalidEdge(e))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v].len()
    }

    /// `δ(v)`: edges incident with `v`, ascending.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident[v].iter().map(move |&e| self.other_end(e, v))
    }

    /// Neighbors of `v` in ascending vertex order.
    pub fn sorted_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<_> = self.neighbors(v).collect();
        out.sort_unstable();
        out
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let (x, y) = if self.degree(a) <= self.degree(b) {
            (a, b)
        } else {
            (b, a)
        };
        self.incident[x].iter().copied().find(|&e| self.other_end(e, x) == y)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.incident.iter().map(Vec::len).min()
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.n > 0 && self.incident.iter().all(|i| i.len() == degree)
    }

    fn check_edge(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        self.edge(e)
    }

    /// `δ(e) = δ(u) ∪ δ(v)` for `e = uv`, sorted. Always contains `e`.
    pub fn edge_closed_neighborhood(&self, e: EdgeId) -> Result<Vec<EdgeId>> {
        let (u, v) = self.check_edge(e)?;
        let mut out: Vec<EdgeId> = self.incident[u].iter().chain(&self.incident[v]).copied().collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `N[u] ∪ N[v]` for `e = uv`, sorted.
    pub fn edge_closed_vertex_neighborhood(&self, e: EdgeId) -> Result<Vec<VertexId>> {
        let (u, v) = self.check_edge(e)?;
        let mut out: Vec<VertexId> = vec![u, v];
        out.extend(self.neighbors(u));
        out.extend(self.neighbors(v));
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `C(e)`: all edges with an endpoint in `N[u] ∪ N[v]`, sorted.
    pub fn conflict_set(&self, e: EdgeId) -> Result<Vec<EdgeId>> {
        let closed = self.edge_closed_vertex_neighborhood(e)?;
        let mut out: Vec<EdgeId> = closed.iter().flat_map(|&w| self.incident[w].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Induced-matching test by counting: every `δ(e)` holds at most one
    /// member edge.
    pub fn is_induced_matching(&self, edges: &[EdgeId]) -> Result<bool> {
        let mut member = vec![false; self.m()];
        for &e in edges {
            self.check_edge(e)?;
            member[e] = true;
        }
        for e in 0..self.m() {
            let hits = self
                .edge_closed_neighborhood(e)?
                .into_iter()
                .filter(|&f| member[f])
                .count();
            if hits > 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Induced-matching test through the conflict relation: no member lies in
    /// the conflict set of another member.
    pub fn is_induced_matching_pairwise(&self, edges: &[EdgeId]) -> Result<bool> {
        let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
        for &e in &set {
            let conflicts = self.conflict_set(e)?;
            if set.iter().any(|&f| f != e && conflicts.binary_search(&f).is_ok()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when no two listed edges share an endpoint.
    pub fn is_matching(&self, edges: &[EdgeId]) -> Result<bool> {
        let mut used = vec![false; self.n];
        let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
        for e in set {
            let (u, v) = self.check_edge(e)?;
            if used[u] || used[v] {
                return Ok(false);
            }
            used[u] = true;
            used[v] = true;
        }
        Ok(true)
    }

    /// Deletes a set of edges, keeping every vertex. Surviving edges keep
    /// their relative order.
    pub fn remove_edges(&self, removed: &[EdgeId]) -> Result<Subgraph> {
        let mut drop = vec![false; self.m()];
        for &e in removed {
            self.check_edge(e)?;
            drop[e] = true;
        }
        let mut edge_map = EdgeMap::new(self.m());
        let mut kept = Vec::new();
        for (e, &pair) in self.edges.iter().enumerate() {
            if !drop[e] {
                edge_map.push(e);
                kept.push(pair);
            }
        }
        Ok(Subgraph {
            graph: Graph::from_checked(self.n, kept),
            vertices: VertexMap::identity(self.n),
            edges: edge_map,
        })
    }

    /// `G − C(e)`: deletes the conflict set of `e`; vertices are retained.
    pub fn remove_conflict_edges(&self, e: EdgeId) -> Result<Subgraph> {
        let conflicts = self.conflict_set(e)?;
        self.remove_edges(&conflicts)
    }

    /// `G − S`: the subgraph induced by the vertices outside `removed`.
    pub fn delete_vertices(&self, removed: &[VertexId]) -> Result<Subgraph> {
        let mut keep = vec![true; self.n];
        for &v in removed {
            if v >= self.n {
                return Err(Error::InvalidVertex(v));
            }
            keep[v] = false;
        }
        Ok(self.restrict(&keep))
    }

    /// `G[X]`.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<Subgraph> {
        let mut keep = vec![false; self.n];
        for &v in vertices {
            if v >= self.n {
                return Err(Error::InvalidVertex(v));
            }
            keep[v] = true;
        }
        Ok(self.restrict(&keep))
    }

    fn restrict(&self, keep: &[bool]) -> Subgraph {
        let mut vertex_map = VertexMap::new(self.n);
        for (v, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            vertex_map.push(v);
        }
        let mut edge_map = EdgeMap::new(self.m());
        let mut kept = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if keep[u] && keep[v] {
                edge_map.push(e);
                let (a, b) = (vertex_map.to_new(u).unwrap(), vertex_map.to_new(v).unwrap());
                kept.push((a.min(b), a.max(b)));
            }
        }
        Subgraph {
            graph: Graph::from_checked(vertex_map.len(), kept),
            vertices: vertex_map,
            edges: edge_map,
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Same graph with edges sorted lexicographically.
    pub fn canonical(&self) -> Graph {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        Graph::from_checked(self.n, edges)
    }

    /// Parses the edge-list format: an optional `p <n> <m>` header, then one
    /// `u v` pair per line; `#` starts a comment.
    pub fn parse(text: &str) -> std::result::Result<Graph, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut pairs: Vec<(usize, VertexId, VertexId)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let malformed = || ParseError::Malformed {
                line,
                text: raw.to_string(),
            };
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens[0] == "p" {
                if header.is_some() || !pairs.is_empty() || tokens.len() != 3 {
                    return Err(malformed());
                }
                let n = tokens[1].parse().map_err(|_| malformed())?;
                let m = tokens[2].parse().map_err(|_| malformed())?;
                header = Some((n, m));
                continue;
            }
            if tokens.len() != 2 {
                return Err(malformed());
            }
            let u: VertexId = tokens[0].parse().map_err(|_| malformed())?;
            let v: VertexId = tokens[1].parse().map_err(|_| malformed())?;
            pairs.push((line, u, v));
        }
        let n = match header {
            Some((n, _)) => n,
            None => pairs.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0),
        };
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(pairs.len());
        for (line, u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(ParseError::VertexOutOfRange { line, v: w, n });
                }
            }
            if u == v {
                return Err(ParseError::Loop { line, v: u });
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(ParseError::DuplicateEdge { line, u: e.0, v: e.1 });
            }
            edges.push(e);
        }
        if let Some((_, m)) = header {
            if m != edges.len() {
                return Err(ParseError::EdgeCountMismatch {
                    expected: m,
                    found: edges.len(),
                });
            }
        }
        Ok(Graph::from_checked(n, edges))
    }

    /// Canonical text form: header, sorted edges with `u < v`, LF endings.
    pub fn serialize(&self) -> String {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        let mut out = format!("p {} {}\n", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Old/new index correspondence for a derived graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexMap {
    new_to_old: Vec<usize>,
    old_to_new: Vec<Option<usize>>,
}

impl IndexMap {
    fn new(old_len: usize) -> Self {
        Self {
            new_to_old: Vec::new(),
            old_to_new: vec![None; old_len],
        }
    }

    fn identity(len: usize) -> Self {
        Self {
            new_to_old: (0..len).collect(),
            old_to_new: (0..len).map(Some).collect(),
        }
    }

    fn push(&mut self, old: usize) {
        self.old_to_new[old] = Some(self.new_to_old.len());
        self.new_to_old.push(old);
    }

    pub fn len(&self) -> usize {
        self.new_to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_to_old.is_empty()
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn new_to_old(&self) -> &[usize] {
        &self.new_to_old
    }

    /// Map from `inner`'s new ids straight to this map's old ids, where
    /// `inner` was taken relative to this map's new ids.
    pub fn compose(&self, inner: &IndexMap) -> IndexMap {
        let mut out = IndexMap::new(self.old_to_new.len());
        for &mid in &inner.new_to_old {
            out.push(self.new_to_old[mid]);
        }
        out
    }
}

pub type VertexMap = IndexMap;
pub type EdgeMap = IndexMap;

/// A graph derived from a parent by deleting vertices or edges, together
/// with the id maps back into the parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    pub vertices: VertexMap,
    pub edges: EdgeMap,
}

impl Subgraph {
    /// `g` as a subgraph of itself.
    pub fn whole(g: &Graph) -> Subgraph {
        Subgraph {
            graph: g.clone(),
            vertices: IndexMap::identity(g.n()),
            edges: IndexMap::identity(g.m()),
        }
    }

    /// Re-roots `inner`, which was derived from `self.graph`, onto the
    /// graph `self` was derived from.
    pub fn compose(&self, inner: Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.compose(&inner.vertices),
            edges: self.edges.compose(&inner.edges),
            graph: inner.graph,
        }
    }
}

/// An edge set certified to be an induced matching of the graph it was
/// checked against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedMatching {
    edges: Vec<EdgeId>,
}

impl InducedMatching {
    /// Validates `edges` against `g`; ids are sorted and deduplicated.
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut edges: Vec<EdgeId> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        if !g.is_induced_matching(&edges)? {
            return Err(Error::Internal(format!(
                "edge set {edges:?} is not an induced matching"
            )));
        }
        Ok(Self { edges })
    }

    pub fn empty() -> Self {
        Self { edges: Vec::new() }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }
}
