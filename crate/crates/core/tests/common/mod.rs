//! Brute-force oracle over labeled graphs. Shares nothing with the library
//! beyond converting to and from `Graph` at the boundary.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use domsat::Graph;

/// Labeled graph on at most 8 vertices; bit `pair(n, i, j)` is edge `ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lg {
    pub n: usize,
    pub mask: u64,
}

pub fn pair(n: usize, i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Lg {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Lg {
        let mut mask = 0;
        for &(a, b) in edges {
            mask |= 1 << pair(n, a, b);
        }
        Lg { n, mask }
    }

    pub fn complete(n: usize) -> Lg {
        Lg {
            n,
            mask: (1u64 << pairs(n)) - 1,
        }
    }

    pub fn adj(&self, i: usize, j: usize) -> bool {
        i != j && self.mask >> pair(self.n, i, j) & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.adj(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn plus(&self, (a, b): (usize, usize)) -> Lg {
        Lg {
            n: self.n,
            mask: self.mask | 1 << pair(self.n, a, b),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.adj(u, v)).count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn to_graph(self) -> Graph {
        Graph::from_edges(self.n, self.edges()).unwrap()
    }

    pub fn from_graph(g: &Graph) -> Lg {
        let edges: Vec<(usize, usize)> = g.edges().map(|e| (e.u, e.v)).collect();
        Lg::new(g.order(), &edges)
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Minimum relabeled mask over all `n!` permutations.
pub struct NaiveCanon {
    n: usize,
    /// `tables[p][bit]` is the image bit of `bit` under permutation `p`.
    tables: Vec<Vec<u64>>,
}

impl NaiveCanon {
    pub fn new(n: usize) -> NaiveCanon {
        let mut tables = Vec::new();
        for p in permutations(n) {
            let mut t = vec![0u64; pairs(n)];
            for i in 0..n {
                for j in i + 1..n {
                    t[pair(n, i, j)] = 1 << pair(n, p[i], p[j]);
                }
            }
            tables.push(t);
        }
        NaiveCanon { n, tables }
    }

    pub fn canon(&self, g: Lg) -> u64 {
        assert_eq!(g.n, self.n);
        self.tables
            .iter()
            .map(|t| {
                let mut m = g.mask;
                let mut out = 0;
                while m != 0 {
                    let b = m.trailing_zeros() as usize;
                    out |= t[b];
                    m &= m - 1;
                }
                out
            })
            .min()
            .unwrap()
    }
}

/// Class counts of all labeled `n`-vertex graphs, indexed by edge count.
pub fn naive_class_counts(n: usize) -> Vec<usize> {
    let canon = NaiveCanon::new(n);
    let mut seen: HashSet<u64> = HashSet::new();
    let mut counts = vec![0; pairs(n) + 1];
    for mask in 0..1u64 << pairs(n) {
        if seen.insert(canon.canon(Lg { n, mask })) {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    counts
}

/// Every injective vertex map from `f` into `g`, fed to `visit`.
fn injective_maps(f: &Lg, g: &Lg, visit: &mut dyn FnMut(&[usize])) {
    fn go(f: &Lg, g: &Lg, map: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut dyn FnMut(&[usize])) {
        if map.len() == f.n {
            visit(map);
            return;
        }
        for v in 0..g.n {
            if !used[v] {
                used[v] = true;
                map.push(v);
                go(f, g, map, used, visit);
                map.pop();
                used[v] = false;
            }
        }
    }
    if f.n <= g.n {
        go(f, g, &mut Vec::new(), &mut vec![false; g.n], visit);
    }
}

/// Edge sets of all subgraphs of `g` isomorphic to `f` (for `f` without
/// isolated vertices, one entry per copy).
pub fn copies(f: &Lg, g: &Lg) -> BTreeSet<u64> {
    let fe = f.edges();
    let mut out = BTreeSet::new();
    injective_maps(f, g, &mut |map| {
        if fe.iter().all(|&(a, b)| g.adj(map[a], map[b])) {
            let mut m = 0;
            for &(a, b) in &fe {
                m |= 1 << pair(g.n, map[a], map[b]);
            }
            out.insert(m);
        }
    });
    out
}

pub fn embeds(f: &Lg, g: &Lg) -> bool {
    !copies(f, g).is_empty()
}

pub fn free(g: &Lg, f: &Lg) -> bool {
    copies(f, g).is_empty()
}

pub fn dominated(g: &Lg, f: &Lg) -> bool {
    let covered = copies(f, g).into_iter().fold(0, |a, m| a | m);
    covered == g.mask
}

/// Counting definition: each added non-edge raises the number of copies.
pub fn semi_saturated(g: &Lg, f: &Lg) -> bool {
    let before = copies(f, g).len();
    g.non_edges().into_iter().all(|e| copies(f, &g.plus(e)).len() > before)
}

pub fn saturated(g: &Lg, f: &Lg) -> bool {
    free(g, f) && g.non_edges().into_iter().all(|e| embeds(f, &g.plus(e)))
}

pub fn dom_sat(g: &Lg, f: &Lg) -> bool {
    dominated(g, f) && semi_saturated(g, f)
}

/// Ordering definition, searched exhaustively over reachable supergraphs.
pub fn weakly_saturated(g: &Lg, f: &Lg) -> bool {
    fn reach(g: Lg, f: &Lg, full: u64, dead: &mut HashSet<u64>) -> bool {
        if g.mask == full {
            return true;
        }
        if dead.contains(&g.mask) {
            return false;
        }
        let before = copies(f, &g).len();
        for e in g.non_edges() {
            let h = g.plus(e);
            if copies(f, &h).len() > before && reach(h, f, full, dead) {
                return true;
            }
        }
        dead.insert(g.mask);
        false
    }
    reach(*g, f, Lg::complete(g.n).mask, &mut HashSet::new())
}

pub fn naive_predicate(name: &str) -> fn(&Lg, &Lg) -> bool {
    match name {
        "free" => free,
        "saturated" => saturated,
        "semi-saturated" => semi_saturated,
        "dominated" => dominated,
        "dom-sat" => dom_sat,
        "weakly-saturated" => weakly_saturated,
        other => panic!("no oracle for {other}"),
    }
}

/// Least edge count `m >= 1` of a labeled `n`-vertex graph passing `pred`,
/// with the canonical masks of all passing graphs at that count.
pub fn naive_min_edges(f: &Lg, n: usize, pred: fn(&Lg, &Lg) -> bool) -> Option<(usize, BTreeSet<u64>)> {
    let canon = NaiveCanon::new(n);
    let mut by_size: HashMap<usize, Vec<u64>> = HashMap::new();
    for mask in 1..1u64 << pairs(n) {
        by_size.entry(mask.count_ones() as usize).or_default().push(mask);
    }
    for m in 1..=pairs(n) {
        let classes: BTreeSet<u64> = by_size[&m]
            .iter()
            .map(|&mask| Lg { n, mask })
            .filter(|g| pred(g, f))
            .map(|g| canon.canon(g))
            .collect();
        if !classes.is_empty() {
            return Some((m, classes));
        }
    }
    None
}
