//! Non-induced subgraph embedding search on bitset adjacency.
//!
//! Pattern vertices are matched in a connected order (most already-placed
//! neighbours first, then highest degree). Candidates for the next pattern
//! vertex are the intersection of the host rows of its placed neighbours,
//! minus used host vertices, filtered by degree.

use std::ops::ControlFlow;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bits, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("edge {0} is not an edge of the host graph")]
    EdgeNotInHost(Edge),
}

/// Injective map from pattern vertices to host vertices that carries every
/// pattern edge onto a host edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    /// `map[p]` is the host vertex for pattern vertex `p`.
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks injectivity and edge preservation against `pattern` and `host`.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        if self.map.len() != pattern.order() || self.map.iter().any(|&v| v >= host.order()) {
            return false;
        }
        let mut seen = 0u64;
        for &v in &self.map {
            if seen >> v & 1 == 1 {
                return false;
            }
            seen |= 1 << v;
        }
        pattern.edges().all(|e| host.has_edge(self.map[e.u], self.map[e.v]))
    }

    /// Host edges hit by the pattern's edges.
    pub fn image_edges(&self, pattern: &Graph) -> Vec<Edge> {
        let mut out: Vec<Edge> = pattern
            .edges()
            .map(|e| Edge::new(self.map[e.u], self.map[e.v]).expect("injective map"))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn uses_edge(&self, pattern: &Graph, e: Edge) -> bool {
        pattern.edges().any(|pe| {
            let (a, b) = (self.map[pe.u], self.map[pe.v]);
            (a == e.u && b == e.v) || (a == e.v && b == e.u)
        })
    }
}

/// Number of distinct copies of a pattern in a host: embeddings divided by
/// the pattern's automorphism count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CopyCount {
    pub copies: u128,
}

/// Matching order and back-links for one pattern, optionally anchored on a
/// prefix of pattern vertices.
struct Plan {
    order: Vec<usize>,
    /// For position `i`, positions `< i` whose vertices are adjacent to `order[i]`.
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    fn new(pattern: &Graph, prefix: &[usize]) -> Plan {
        let n = pattern.order();
        let mut order: Vec<usize> = prefix.to_vec();
        let mut placed: u64 = prefix.iter().fold(0, |acc, &p| acc | 1 << p);
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    let links = (pattern.row(v) & placed).count_ones();
                    (links, pattern.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            order.push(next);
            placed |= 1 << next;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &p)| (0..i).filter(|&j| pattern.has_edge(order[j], p)).collect())
            .collect();
        let degree = order.iter().map(|&p| pattern.degree(p)).collect();
        Plan { order, back, degree }
    }
}

struct Matcher<'a> {
    host: &'a Graph,
    plan: Plan,
    /// Host image by position in `plan.order`.
    image: Vec<usize>,
    all: u64,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &Graph, host: &'a Graph, prefix: &[usize]) -> Self {
        Matcher {
            host,
            plan: Plan::new(pattern, prefix),
            image: vec![usize::MAX; pattern.order()],
            all: host.vertices().0,
        }
    }

    fn extend<F>(&mut self, pos: usize, used: u64, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    {
        if pos == self.plan.order.len() {
            return visit(&self.plan.order, &self.image);
        }
        let mut cand = self.all & !used;
        for &j in &self.plan.back[pos] {
            cand &= self.host.row(self.image[j]);
        }
        let need = self.plan.degree[pos];
        for v in Bits(cand) {
            if self.host.degree(v) < need {
                continue;
            }
            self.image[pos] = v;
            self.extend(pos + 1, used | 1 << v, visit)?;
        }
        ControlFlow::Continue(())
    }
}

fn to_embedding(order: &[usize], image: &[usize]) -> Embedding {
    let mut map = vec![0; order.len()];
    for (&p, &h) in order.iter().zip(image) {
        map[p] = h;
    }
    Embedding { map }
}

/// Some embedding of `pattern` into `host`, if one exists.
pub fn embedding_exists(pattern: &Graph, host: &Graph) -> Option<Embedding> {
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return None;
    }
    let mut m = Matcher::new(pattern, host, &[]);
    let mut found = None;
    let _ = m.extend(0, 0, &mut |order, image| {
        found = Some(to_embedding(order, image));
        ControlFlow::Break(())
    });
    found
}

/// Some embedding of `pattern` into `host` whose image edges include `e`.
pub fn copy_through_edge(pattern: &Graph, host: &Graph, e: Edge) -> Result<Option<Embedding>, IsoError> {
    if !host.contains_edge(e) {
        return Err(IsoError::EdgeNotInHost(e));
    }
    Ok(anchored(pattern, host, e))
}

pub(crate) fn anchored(pattern: &Graph, host: &Graph, e: Edge) -> Option<Embedding> {
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return None;
    }
    let (x, y) = (e.u, e.v);
    let (dx, dy) = (host.degree(x), host.degree(y));
    // Pattern edges equivalent under pattern automorphisms give the same
    // answer; trying all of them is cheap at these sizes.
    for pe in pattern.edges() {
        for (a, b) in [(pe.u, pe.v), (pe.v, pe.u)] {
            if pattern.degree(a) > dx || pattern.degree(b) > dy {
                continue;
            }
            let mut m = Matcher::new(pattern, host, &[a, b]);
            m.image[0] = x;
            m.image[1] = y;
            let mut found = None;
            let _ = m.extend(2, 1 << x | 1 << y, &mut |order, image| {
                found = Some(to_embedding(order, image));
                ControlFlow::Break(())
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Number of embeddings (injective edge-preserving maps) of `pattern` into `host`.
pub fn count_embeddings(pattern: &Graph, host: &Graph) -> u128 {
    if pattern.order() > host.order() || pattern.size() > host.size() {
        return 0;
    }
    let mut m = Matcher::new(pattern, host, &[]);
    let mut count = 0u128;
    let _ = m.extend(0, 0, &mut |_, _| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Distinct copies of `pattern` in `host`.
pub fn count_copies(pattern: &Graph, host: &Graph) -> CopyCount {
    Pattern::new(pattern.clone()).count_copies(host)
}

/// A pattern graph with its automorphism count computed once on demand.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: Graph,
    automorphisms: OnceLock<u128>,
}

impl Pattern {
    pub fn new(graph: Graph) -> Self {
        Pattern {
            graph,
            automorphisms: OnceLock::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn automorphism_count(&self) -> u128 {
        *self
            .automorphisms
            .get_or_init(|| count_embeddings(&self.graph, &self.graph))
    }

    pub fn count_copies(&self, host: &Graph) -> CopyCount {
        CopyCount {
            copies: count_embeddings(&self.graph, host) / self.automorphism_count(),
        }
    }
}
