//! Canonical labeling by partition refinement and individualization, with
//! automorphism pruning.
//!
//! Every leaf of the search tree is a discrete ordered partition, read as a
//! relabeling. The canonical form is the relabeled adjacency that is largest
//! in row-lexicographic order over all leaves. Two pruning rules keep the
//! tree small:
//!
//! * children of a node that lie in one orbit of the automorphisms found so
//!   far (restricted to those fixing the node's individualized vertices) are
//!   explored once;
//! * a leaf equivalent to the first or the best leaf yields an automorphism
//!   and the search jumps back to the deepest common ancestor of the two
//!   leaves, whose remaining subtree is an image of one already explored.
//!
//! The automorphisms found along the way generate the full automorphism
//! group; enumeration relies on this for its orbit computations.

use crate::graph::{Bits, Edge, Graph};

/// Result of [`canonical_labeling`].
#[derive(Debug, Clone)]
pub struct Labeling {
    /// `order[i]` is the input vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Automorphisms of the input graph as vertex maps `v -> gen[v]`.
    pub generators: Vec<Vec<usize>>,
    /// The input relabeled by `order`.
    pub canonical: Graph,
}

impl Labeling {
    /// Generators re-expressed on the vertices of [`Labeling::canonical`].
    pub fn canonical_generators(&self) -> Vec<Vec<usize>> {
        let n = self.order.len();
        let mut pos = vec![0; n];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        self.generators
            .iter()
            .map(|gen| (0..n).map(|i| pos[gen[self.order[i]]]).collect())
            .collect()
    }
}

pub fn canonical_form(g: &Graph) -> Graph {
    canonical_labeling(g).canonical
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let cells = vec![g.vertices().0];
    run(g, cells)
}

/// Canonical labeling of a vertex-colored graph: isomorphisms must map each
/// color class onto the same color class. Colors are compared numerically,
/// and lower colors come first in the canonical order.
pub fn canonical_labeling_colored(g: &Graph, colors: &[usize]) -> Labeling {
    assert_eq!(colors.len(), g.order());
    let mut distinct: Vec<usize> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let cells = distinct
        .iter()
        .map(|&c| {
            colors
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x == c)
                .fold(0u64, |acc, (v, _)| acc | 1 << v)
        })
        .collect();
    run(g, cells)
}

/// Size of the automorphism group, by counting self-embeddings.
pub fn automorphism_count(g: &Graph) -> u128 {
    crate::iso::count_embeddings(g, g)
}

fn run(g: &Graph, mut cells: Vec<u64>) -> Labeling {
    refine(g, &mut cells);
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut path = Vec::new();
    search.descend(cells, &mut path);
    let best = search.best.expect("search reaches at least one leaf");
    Labeling {
        canonical: g.permuted(&best.order),
        order: best.order,
        generators: search.generators,
    }
}

/// Splits cells by neighbour counts into each splitter cell until stable.
/// Sub-cells are ordered by ascending count, which keeps the result
/// independent of vertex labels.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let n = g.order();
    let mut scratch: Vec<(u32, usize)> = Vec::with_capacity(n);
    loop {
        if cells.len() == n {
            return;
        }
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            let splitter = cells[si];
            let mut next = Vec::with_capacity(cells.len() + 2);
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                scratch.clear();
                scratch.extend(Bits(cell).map(|v| ((g.row(v) & splitter).count_ones(), v)));
                let lo = scratch.iter().map(|p| p.0).min().unwrap_or(0);
                if scratch.iter().all(|p| p.0 == lo) {
                    next.push(cell);
                    continue;
                }
                changed = true;
                scratch.sort_unstable();
                let mut current = 0u64;
                let mut count = scratch[0].0;
                for &(c, v) in &scratch {
                    if c != count {
                        next.push(current);
                        current = 0;
                        count = c;
                    }
                    current |= 1 << v;
                }
                next.push(current);
            }
            *cells = next;
            si += 1;
        }
        if !changed {
            return;
        }
    }
}

struct Leaf {
    key: Vec<u64>,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns the level to jump back to, if an automorphism was found.
    fn descend(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.g.order() {
            return self.leaf(&cells, path);
        }
        let depth = path.len();
        let ti = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("non-discrete partition has a non-singleton cell");
        let target = cells[ti];
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, Vec<usize>)> = None;
        for v in Bits(target) {
            if !explored.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(seen, _)| *seen != self.generators.len());
                if stale {
                    orbits = Some((self.generators.len(), self.stabilizer_orbits(path)));
                }
                let (_, orbit) = orbits.as_ref().expect("just computed");
                if explored.iter().any(|&u| orbit[u] == orbit[v]) {
                    continue;
                }
            }
            explored.push(v);

            let mut child = cells.clone();
            child[ti] = target & !(1u64 << v);
            child.insert(ti, 1u64 << v);
            refine(self.g, &mut child);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    /// Orbit representatives (smallest member) under the generators that fix
    /// every vertex of `path`.
    fn stabilizer_orbits(&self, path: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let gens = self.generators.iter().filter(|gen| path.iter().all(|&p| gen[p] == p));
        orbit_roots(n, gens)
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let key = relabeled_rows(self.g, &order);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                key,
                order,
                path: path.to_vec(),
            };
            self.best = Some(Leaf {
                key: leaf.key.clone(),
                order: leaf.order.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if key == first.key {
            let gen = map_between(&first.order, &order);
            let level = common_prefix(&first.path, path);
            self.push_generator(gen);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best set with first");
        if key == best.key {
            let gen = map_between(&best.order, &order);
            let level = common_prefix(&best.path, path);
            self.push_generator(gen);
            return Some(level);
        }
        if key > best.key {
            self.best = Some(Leaf {
                key,
                order,
                path: path.to_vec(),
            });
        }
        None
    }

    fn push_generator(&mut self, gen: Vec<usize>) {
        if gen.iter().enumerate().any(|(i, &x)| i != x) {
            self.generators.push(gen);
        }
    }
}

fn relabeled_rows(g: &Graph, order: &[usize]) -> Vec<u64> {
    let mut pos = [0u8; 64];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i as u8;
    }
    order
        .iter()
        .map(|&v| Bits(g.row(v)).fold(0u64, |acc, w| acc | 1 << pos[w]))
        .collect()
}

/// The vertex map sending `from[i]` to `to[i]`.
fn map_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gen = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gen[a] = b;
    }
    gen
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbit representatives (smallest member) of the group generated by `gens`
/// acting on `0..n`.
pub fn orbit_roots<'a, I>(n: usize, gens: I) -> Vec<usize>
where
    I: IntoIterator<Item = &'a Vec<usize>>,
{
    let mut parent: Vec<usize> = (0..n).collect();
    for gen in gens {
        for (v, &w) in gen.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Applies a vertex map to an unordered pair.
pub fn map_edge(gen: &[usize], e: Edge) -> Edge {
    let (a, b) = (gen[e.u], gen[e.v]);
    Edge {
        u: a.min(b),
        v: a.max(b),
    }
}

/// The orbit of `e` under the group generated by `gens`, as a sorted list.
pub fn edge_orbit(gens: &[Vec<usize>], e: Edge) -> Vec<Edge> {
    let mut orbit = vec![e];
    let mut i = 0;
    while i < orbit.len() {
        let cur = orbit[i];
        for gen in gens {
            let img = map_edge(gen, cur);
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
        i += 1;
    }
    orbit.sort_unstable();
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn is_automorphism(g: &Graph, gen: &[usize]) -> bool {
        g.edges().all(|e| g.has_edge(gen[e.u], gen[e.v]))
    }

    /// Size of the group generated by `gens`, by closing under composition.
    fn group_order(n: usize, gens: &[Vec<usize>]) -> usize {
        let id: Vec<usize> = (0..n).collect();
        let mut seen = std::collections::HashSet::from([id.clone()]);
        let mut stack = vec![id];
        while let Some(p) = stack.pop() {
            for g in gens {
                let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
                if seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn path_relabeling_invariance() {
        let a = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, [(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn idempotent() {
        for g in [Graph::petersen(), Graph::path(7), Graph::star(5), Graph::cycle(6)] {
            let c = canonical_form(&g);
            assert_eq!(canonical_form(&c), c);
        }
    }

    #[test]
    fn generators_generate_the_full_group() {
        let cases = [
            (Graph::complete(6), 720),
            (Graph::empty(5), 120),
            (Graph::cycle(6), 12),
            (Graph::petersen(), 120),
            (Graph::star(4), 24),
            (Graph::complete_bipartite(2, 3), 12),
            (Graph::path(5), 2),
        ];
        for (g, order) in cases {
            let lab = canonical_labeling(&g);
            assert!(lab.generators.iter().all(|gen| is_automorphism(&g, gen)));
            assert_eq!(group_order(g.order(), &lab.generators), order, "{g:?}");
            assert_eq!(automorphism_count(&g), order as u128);
        }
    }

    #[test]
    fn canonical_generators_act_on_canonical_graph() {
        let g = Graph::from_edges(6, [(0, 3), (3, 5), (5, 1), (2, 4)]).unwrap();
        let lab = canonical_labeling(&g);
        for gen in lab.canonical_generators() {
            assert!(is_automorphism(&lab.canonical, &gen));
        }
    }

    #[test]
    fn colored_labeling_respects_colors() {
        // P_3 with an end colored differently from the other end.
        let p = Graph::path(3);
        let a = canonical_labeling_colored(&p, &[1, 0, 0]);
        let b = canonical_labeling_colored(&p, &[0, 0, 1]);
        let c = canonical_labeling_colored(&p, &[0, 1, 0]);
        assert_eq!(a.canonical, b.canonical);
        assert_ne!(
            (
                a.canonical.clone(),
                a.order.iter().map(|&v| [1, 0, 0][v]).collect::<Vec<_>>()
            ),
            (
                c.canonical.clone(),
                c.order.iter().map(|&v| [0, 1, 0][v]).collect::<Vec<_>>()
            )
        );
    }

    #[test]
    fn edge_orbits_of_a_path() {
        let p = Graph::path(4);
        let lab = canonical_labeling(&p);
        let ends = edge_orbit(&lab.generators, Edge { u: 0, v: 1 });
        assert_eq!(ends, vec![Edge { u: 0, v: 1 }, Edge { u: 2, v: 3 }]);
        let mid = edge_orbit(&lab.generators, Edge { u: 1, v: 2 });
        assert_eq!(mid.len(), 1);
    }

    #[test]
    fn induced_subgraph_keeps_canonical_class() {
        let g = Graph::petersen();
        let h = g.induced(VertexSet::from_iter([0, 1, 2, 3, 4])).unwrap();
        assert_eq!(canonical_form(&h), canonical_form(&Graph::cycle(5)));
    }
}
