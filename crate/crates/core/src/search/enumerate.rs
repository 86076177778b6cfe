//! Isomorph-free generation of graphs with `n` vertices, one edge at a time.
//!
//! Each level holds canonical forms with their automorphism generators. A
//! parent is extended by one representative of every non-edge orbit. The
//! child `H = P + e` is kept iff `e` lies in the `Aut(H)`-orbit of the
//! canonical deletion edge of `H` (the last edge of its canonical form).
//! Every class then has exactly one accepted parent-edge pair.

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_labeling, edge_orbit};
use crate::graph::{Edge, Graph};

pub const MAX_ENUM_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("enumeration supports 1 <= n <= {MAX_ENUM_ORDER}, got n = {0}")]
    Order(usize),
    #[error("an {n}-vertex graph has at most {max} edges, got m = {m}", max = n * n.saturating_sub(1) / 2)]
    Edges { n: usize, m: usize },
}

/// A canonical graph with automorphism generators on its own labels.
#[derive(Debug, Clone)]
pub struct Node {
    pub graph: Graph,
    pub generators: Vec<Vec<usize>>,
}

impl Node {
    fn empty(n: usize) -> Node {
        let lab = canonical_labeling(&Graph::empty(n));
        Node {
            generators: lab.canonical_generators(),
            graph: lab.canonical,
        }
    }
}

/// One representative per orbit of non-edges under `gens`.
fn non_edge_orbit_reps(g: &Graph, gens: &[Vec<usize>]) -> Vec<Edge> {
    let mut seen: Vec<Edge> = Vec::new();
    let mut reps = Vec::new();
    for e in g.non_edges() {
        if seen.binary_search(&e).is_ok() {
            continue;
        }
        reps.push(e);
        if !gens.is_empty() {
            for x in edge_orbit(gens, e) {
                if let Err(at) = seen.binary_search(&x) {
                    seen.insert(at, x);
                }
            }
        }
    }
    reps
}

/// Children of `parent` whose canonical parent is `parent`.
pub fn children(parent: &Node) -> Vec<Node> {
    let mut out = Vec::new();
    for e in non_edge_orbit_reps(&parent.graph, &parent.generators) {
        let h = parent.graph.with_edge(e);
        let lab = canonical_labeling(&h);
        let last = lab.canonical.edges().last().expect("child has an edge");
        let star = Edge::new(lab.order[last.u], lab.order[last.v]).expect("distinct endpoints");
        let accept = star == e || edge_orbit(&lab.generators, star).binary_search(&e).is_ok();
        if accept {
            out.push(Node {
                generators: lab.canonical_generators(),
                graph: lab.canonical,
            });
        }
    }
    out
}

/// Level-by-level generator. `keep(node, m)` may discard a node at level
/// `m` together with all its descendants; it must only reject nodes none
/// of whose supergraphs are wanted.
pub struct Levels<'a> {
    n: usize,
    level: Vec<Node>,
    m: usize,
    keep: Box<dyn Fn(&Graph, usize) -> bool + Sync + 'a>,
}

impl<'a> Levels<'a> {
    pub fn new(n: usize) -> Result<Self, EnumerateError> {
        Levels::with_filter(n, |_, _| true)
    }

    pub fn with_filter<F>(n: usize, keep: F) -> Result<Self, EnumerateError>
    where
        F: Fn(&Graph, usize) -> bool + Sync + 'a,
    {
        if n == 0 || n > MAX_ENUM_ORDER {
            return Err(EnumerateError::Order(n));
        }
        let root = Node::empty(n);
        let level = if keep(&root.graph, 0) { vec![root] } else { Vec::new() };
        Ok(Levels {
            n,
            level,
            m: 0,
            keep: Box::new(keep),
        })
    }

    /// Edge count of the current level.
    pub fn edges(&self) -> usize {
        self.m
    }

    pub fn current(&self) -> &[Node] {
        &self.level
    }

    /// Moves to the next edge count; returns false past the complete graph.
    pub fn advance(&mut self) -> bool {
        if self.m >= self.n * (self.n - 1) / 2 {
            self.level.clear();
            return false;
        }
        let next_m = self.m + 1;
        let keep = &self.keep;
        let mut next: Vec<Node> = self
            .level
            .par_iter()
            .flat_map_iter(|p| children(p).into_iter().filter(|c| keep(&c.graph, next_m)))
            .collect();
        next.sort_unstable_by(|a, b| a.graph.cmp(&b.graph));
        self.level = next;
        self.m = next_m;
        true
    }

    /// Advances to level `m` (which must not be behind the current level).
    pub fn advance_to(&mut self, m: usize) -> Result<&[Node], EnumerateError> {
        if m > self.n * (self.n - 1) / 2 {
            return Err(EnumerateError::Edges { n: self.n, m });
        }
        assert!(m >= self.m, "levels only move forward");
        while self.m < m {
            self.advance();
        }
        Ok(&self.level)
    }
}

/// One canonical representative per isomorphism class of `n`-vertex,
/// `m`-edge graphs, in ascending order.
pub fn enumerate_graphs(n: usize, m: usize) -> Result<Vec<Graph>, EnumerateError> {
    let mut levels = Levels::new(n)?;
    Ok(levels.advance_to(m)?.iter().map(|node| node.graph.clone()).collect())
}

/// Class counts for every `m` from 0 to `C(n,2)`.
pub fn class_counts(n: usize) -> Result<Vec<usize>, EnumerateError> {
    let mut levels = Levels::new(n)?;
    let mut counts = vec![levels.current().len()];
    while levels.advance() {
        counts.push(levels.current().len());
    }
    Ok(counts)
}

/// Canonical trees on `n` vertices.
pub fn trees(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    let mut levels = Levels::with_filter(n, |g, _| g.is_acyclic())?;
    Ok(levels
        .advance_to(n - 1)?
        .iter()
        .map(|node| node.graph.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    #[test]
    fn four_vertices_three_edges() {
        let got = enumerate_graphs(4, 3).unwrap();
        let mut want: Vec<Graph> = [
            Graph::path(4),
            Graph::star(3),
            Graph::disjoint_union([&Graph::complete(3), &Graph::empty(1)]).unwrap(),
        ]
        .iter()
        .map(canonical_form)
        .collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(enumerate_graphs(4, 6).unwrap(), vec![Graph::complete(4)]);
    }

    #[test]
    fn totals() {
        let sum = |n| class_counts(n).unwrap().iter().sum::<usize>();
        assert_eq!(sum(1), 1);
        assert_eq!(sum(2), 2);
        assert_eq!(sum(3), 4);
        assert_eq!(sum(4), 11);
        assert_eq!(sum(5), 34);
        assert_eq!(sum(6), 156);
        assert_eq!(sum(7), 1044);
    }

    #[test]
    fn counts_are_symmetric() {
        let c = class_counts(6).unwrap();
        let rev: Vec<usize> = c.iter().rev().copied().collect();
        assert_eq!(c, rev);
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (3..=8).map(|n| trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn range_errors() {
        assert_eq!(enumerate_graphs(11, 0).unwrap_err(), EnumerateError::Order(11));
        assert!(matches!(enumerate_graphs(4, 7), Err(EnumerateError::Edges { .. })));
    }
}
