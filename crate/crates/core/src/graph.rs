//! Small simple undirected graphs stored as one `u64` adjacency row per vertex.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported vertex count; one adjacency row fits a machine word.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have between 1 and {MAX_VERTICES} vertices, got {0}")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A subset of the vertices `0..n` of some graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All of `0..n`.
    pub fn full(n: usize) -> VertexSet {
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;
    fn into_iter(self) -> Bits {
        self.iter()
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Debug, Clone)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Immutable simple graph on vertices `0..n`.
///
/// Values are compared and hashed by their labeled adjacency, so two
/// isomorphic graphs are only equal after [`crate::canon::canonical_form`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// # Panics
    /// If `n` is 0 or exceeds [`MAX_VERTICES`]. Use [`Graph::try_empty`] for
    /// untrusted sizes.
    pub fn empty(n: usize) -> Graph {
        Graph::try_empty(n).expect("vertex count out of range")
    }

    pub fn try_empty(n: usize) -> Result<Graph, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::try_empty(n)?;
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            g.set_edge(a, b);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows; bits at or above `n` and on the
    /// diagonal are rejected by symmetry checks in debug builds.
    pub(crate) fn from_rows(rows: Vec<u64>) -> Graph {
        let g = Graph { n: rows.len(), rows };
        debug_assert!(g.is_well_formed());
        g
    }

    fn is_well_formed(&self) -> bool {
        (0..self.n).all(|v| {
            self.rows[v] & !low_mask(self.n) == 0
                && !self.has_edge(v, v)
                && self.neighbors(v).iter().all(|w| self.has_edge(w, v))
        })
    }

    pub fn complete(n: usize) -> Graph {
        let full = low_mask(n);
        let rows = (0..n).map(|v| full & !(1u64 << v)).collect();
        Graph::from_rows(rows)
    }

    /// Path on `n` vertices `0-1-..-(n-1)`.
    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// Star `K_{1,r}`: center 0 and leaves `1..=r`.
    pub fn star(r: usize) -> Graph {
        Graph::from_edges(r + 1, (1..=r).map(|i| (0, i))).expect("valid star")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y)));
        Graph::from_edges(a + b, edges).expect("valid bipartite graph")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid petersen")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.rows[u] & !low_mask(u + 1)).map(move |v| Edge { u, v }))
    }

    /// Vertex pairs that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let full = low_mask(self.n);
        (0..self.n).flat_map(move |u| Bits(!self.rows[u] & full & !low_mask(u + 1)).map(move |v| Edge { u, v }))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        e.v < self.n && self.has_edge(e.u, e.v)
    }

    pub fn is_complete(&self) -> bool {
        self.size() == self.n * (self.n - 1) / 2
    }

    pub(crate) fn set_edge(&mut self, a: usize, b: usize) {
        self.rows[a] |= 1 << b;
        self.rows[b] |= 1 << a;
    }

    pub(crate) fn clear_edge(&mut self, a: usize, b: usize) {
        self.rows[a] &= !(1 << b);
        self.rows[b] &= !(1 << a);
    }

    /// Copy of `self` with `e` added.
    pub fn with_edge(&self, e: Edge) -> Graph {
        let mut g = self.clone();
        g.set_edge(e.u, e.v);
        g
    }

    /// Copy of `self` with `e` removed.
    pub fn without_edge(&self, e: Edge) -> Graph {
        let mut g = self.clone();
        g.clear_edge(e.u, e.v);
        g
    }

    /// Relabels so that vertex `order[i]` of `self` becomes vertex `i`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        let mut pos = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows = order
            .iter()
            .map(|&v| self.neighbors(v).iter().fold(0u64, |acc, w| acc | 1 << pos[w]))
            .collect();
        Graph::from_rows(rows)
    }

    /// Subgraph induced on `keep`, relabeled to `0..keep.len()` in vertex order.
    pub fn induced(&self, keep: VertexSet) -> Option<Graph> {
        let order: Vec<usize> = keep.iter().filter(|&v| v < self.n).collect();
        if order.is_empty() {
            return None;
        }
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let rows = order
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .intersection(keep)
                    .iter()
                    .fold(0u64, |acc, w| acc | 1 << pos[w])
            })
            .collect();
        Some(Graph::from_rows(rows))
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            next &= within.0 & !seen;
            seen |= next;
            frontier = next;
        }
        VertexSet(seen)
    }

    /// Connected components of the subgraph induced on `within`, ordered by
    /// smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach(v, within);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertices()) == self.vertices()
    }

    /// Edges whose removal increases the number of components.
    pub fn bridges(&self) -> Vec<Edge> {
        let mut g = self.clone();
        self.edges()
            .filter(|e| {
                g.clear_edge(e.u, e.v);
                let cut = !g.reach(e.u, g.vertices()).contains(e.v);
                g.set_edge(e.u, e.v);
                cut
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.size() + self.components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.size() + 1 == self.n
    }

    /// Structural summary used throughout the predicates and bounds.
    pub fn structure(&self) -> Structure {
        let mut degree_sequence: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
        Structure {
            min_degree: self.min_degree(),
            degree_sequence,
            components: self.components().into_iter().map(|c| c.iter().collect()).collect(),
            bridges: self.bridges(),
            acyclic: self.is_acyclic(),
        }
    }

    /// Complete join: disjoint union plus every edge between the two sides.
    /// Vertices of `h` follow those of `self`.
    pub fn join(&self, h: &Graph) -> Result<Graph, GraphError> {
        let mut g = Graph::disjoint_union([self, h])?;
        for a in 0..self.n {
            for b in 0..h.n {
                g.set_edge(a, self.n + b);
            }
        }
        Ok(g)
    }

    /// Disjoint union, parts laid out consecutively in the given order.
    pub fn disjoint_union<'a, I>(parts: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = &'a Graph>,
    {
        let mut rows = Vec::new();
        for part in parts {
            let offset = rows.len();
            if offset + part.n > MAX_VERTICES {
                return Err(GraphError::VertexCount(offset + part.n));
            }
            rows.extend(part.rows.iter().map(|r| r << offset));
        }
        if rows.is_empty() {
            return Err(GraphError::VertexCount(0));
        }
        Ok(Graph::from_rows(rows))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// Result of [`Graph::structure`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub min_degree: usize,
    /// Non-increasing.
    pub degree_sequence: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub bridges: Vec<Edge>,
    pub acyclic: bool,
}
