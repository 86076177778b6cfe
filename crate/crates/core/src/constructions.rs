//! Builders for the extremal and witness families.
//!
//! Every builder takes exact parameters and returns an error when they are
//! infeasible. Vertex labels follow a fixed block order (documented on each
//! builder) so the graph6 output is stable. Builders whose families need a
//! divisibility condition also have a `*_padded` form where one oversized
//! block absorbs the remainder.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, MAX_VERTICES};
use crate::predicates::{self, PredicateKind, PredicateReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{family}: {reason}")]
    Range { family: &'static str, reason: String },
    #[error("{family}: n = {n} is not a multiple of the block size {block}")]
    Divisibility {
        family: &'static str,
        n: usize,
        block: usize,
    },
    #[error("pattern has no bridge")]
    NoBridge,
    #[error("pattern has no edge")]
    NoQualifyingEdge,
    #[error("cycle gadget: no clique size l with {r} <= l < {max} and enough room for a loop at n = {n}", max = 2 * r - 3)]
    NoFeasibleClique { n: usize, r: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

fn range(family: &'static str, reason: impl Into<String>) -> ConstructionError {
    ConstructionError::Range {
        family,
        reason: reason.into(),
    }
}

fn check_order(family: &'static str, n: usize) -> Result<()> {
    if n == 0 || n > MAX_VERTICES {
        return Err(range(family, format!("n = {n} must be in 1..={MAX_VERTICES}")));
    }
    Ok(())
}

fn copies(block: &Graph, count: usize) -> Result<Graph> {
    Ok(Graph::disjoint_union(std::iter::repeat_n(block, count))?)
}

fn blocks_with_last(block: &Graph, count: usize, last: &Graph) -> Result<Graph> {
    let parts = std::iter::repeat_n(block, count - 1).chain([last]);
    Ok(Graph::disjoint_union(parts)?)
}

/// `M*_k`: `k/2` disjoint edges for even `k`; a triangle on `0,1,2` plus
/// `(k-3)/2` disjoint edges for odd `k`.
pub fn near_matching(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(range("near-matching", format!("k = {k} must be at least 2")));
    }
    check_order("near-matching", k)?;
    let start = if k % 2 == 1 { 3 } else { 0 };
    let triangle = [(0, 1), (0, 2), (1, 2)];
    let pairs = (start..k).step_by(2).map(|a| (a, a + 1));
    let edges = triangle.into_iter().take(start).chain(pairs);
    Ok(Graph::from_edges(k, edges)?)
}

/// `D(n,r)`: `K_{r-2}` on `0..r-2` joined to `M*_{n-r+2}` on the rest.
pub fn dom_turan(n: usize, r: usize) -> Result<Graph> {
    if r < 3 || n < r {
        return Err(range(
            "dom-turan",
            format!("need r >= 3 and n >= r, got n = {n}, r = {r}"),
        ));
    }
    check_order("dom-turan", n)?;
    Ok(Graph::complete(r - 2).join(&near_matching(n - r + 2)?)?)
}

/// Balanced complete `r`-partite graph; the larger parts come first.
pub fn turan(n: usize, r: usize) -> Result<Graph> {
    if r < 1 || n < r {
        return Err(range("turan", format!("need n >= r >= 1, got n = {n}, r = {r}")));
    }
    check_order("turan", n)?;
    let mut part = Vec::with_capacity(n);
    for p in 0..r {
        let size = n / r + usize::from(p < n % r);
        part.extend(std::iter::repeat_n(p, size));
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Ok(Graph::from_edges(n, edges.filter(|&(a, b)| part[a] != part[b]))?)
}

/// Path component size for `P_r`: `3j` when `r = 2j+1`, `3j+1` when `r = 2j+2`.
pub fn path_component(r: usize) -> usize {
    let j = (r - 1) / 2;
    if r % 2 == 1 {
        3 * j
    } else {
        3 * j + 1
    }
}

/// Disjoint paths of [`path_component`]`(r)` vertices each.
pub fn path_family(n: usize, r: usize) -> Result<Graph> {
    if r < 3 {
        return Err(range("path", format!("r = {r} must be at least 3")));
    }
    check_order("path", n)?;
    let c = path_component(r);
    if !n.is_multiple_of(c) {
        return Err(ConstructionError::Divisibility {
            family: "path",
            n,
            block: c,
        });
    }
    copies(&Graph::path(c), n / c)
}

/// As [`path_family`], with the last path lengthened by `n mod c`.
pub fn path_family_padded(n: usize, r: usize) -> Result<Graph> {
    if r < 3 {
        return Err(range("path", format!("r = {r} must be at least 3")));
    }
    check_order("path", n)?;
    let c = path_component(r);
    if n < c {
        return Err(range("path", format!("n = {n} is below the component size {c}")));
    }
    blocks_with_last(&Graph::path(c), n / c, &Graph::path(c + n % c))
}

/// Clique size for [`cycle_gadget`]: the unique `l` with `r <= l < 2r-3`
/// and `l = n (mod r-3)`.
pub fn cycle_gadget_clique(n: usize, r: usize) -> Option<usize> {
    if r < 4 {
        return None;
    }
    let l = (r..2 * r - 3).find(|l| l % (r - 3) == n % (r - 3))?;
    (n >= l + (r - 3)).then_some(l)
}

/// `K_l` on `0..l` with fixed vertices 0 and 1, then `(n-l)/(r-3)` paths
/// on `r-3` vertices; each path starts at a neighbour of 0 and ends at a
/// neighbour of 1.
pub fn cycle_gadget(n: usize, r: usize) -> Result<Graph> {
    if r < 4 {
        return Err(range("cycle-gadget", format!("r = {r} must be at least 4")));
    }
    check_order("cycle-gadget", n)?;
    let l = cycle_gadget_clique(n, r).ok_or(ConstructionError::NoFeasibleClique { n, r })?;
    cycle_gadget_with_loops(l, r - 3, (n - l) / (r - 3))
}

/// The cycle gadget with free clique size, loop length and loop count.
/// Loop `i` occupies `clique + i*loop_len ..` in path order.
pub fn cycle_gadget_with_loops(clique: usize, loop_len: usize, loops: usize) -> Result<Graph> {
    if clique < 2 || loop_len < 1 {
        return Err(range(
            "cycle-gadget",
            "need a clique of at least 2 vertices and loops of at least 1",
        ));
    }
    let n = clique + loop_len * loops;
    check_order("cycle-gadget", n)?;
    let mut g = Graph::disjoint_union(
        std::iter::once(&Graph::complete(clique)).chain(std::iter::repeat_n(&Graph::path(loop_len), loops)),
    )?;
    for i in 0..loops {
        let first = clique + i * loop_len;
        g.set_edge(0, first);
        g.set_edge(1, first + loop_len - 1);
    }
    Ok(g)
}

/// Disjoint `K_{r-1,r}` blocks, each laid out smaller side first.
pub fn star_family(n: usize, r: usize) -> Result<Graph> {
    if r < 2 {
        return Err(range("star", format!("r = {r} must be at least 2")));
    }
    check_order("star", n)?;
    let block = 2 * r - 1;
    if !n.is_multiple_of(block) {
        return Err(ConstructionError::Divisibility {
            family: "star",
            n,
            block,
        });
    }
    copies(&Graph::complete_bipartite(r - 1, r), n / block)
}

/// As [`star_family`], with the last block `K_{r-1, r + (n mod (2r-1))}`.
pub fn star_family_padded(n: usize, r: usize) -> Result<Graph> {
    if r < 2 {
        return Err(range("star", format!("r = {r} must be at least 2")));
    }
    check_order("star", n)?;
    let block = 2 * r - 1;
    if n < block {
        return Err(range("star", format!("n = {n} is below the block size {block}")));
    }
    blocks_with_last(
        &Graph::complete_bipartite(r - 1, r),
        n / block,
        &Graph::complete_bipartite(r - 1, r + n % block),
    )
}

/// `(G_s, H_s)`. `G_s` is the star `K_{1,s-2}` (centre 0) with vertex
/// `s-1` hung off leaf 1. `H_s` joins the centres 0 and `s-1` of two stars
/// `K_{1,s-2}`.
pub fn star_plus_pair(s: usize) -> Result<(Graph, Graph)> {
    if s < 4 {
        return Err(range("star-plus", format!("s = {s} must be at least 4")));
    }
    check_order("star-plus", 2 * s - 2)?;
    let g = Graph::from_edges(s, (1..s - 1).map(|i| (0, i)).chain([(1, s - 1)]))?;
    let h = Graph::disjoint_union([&Graph::star(s - 2), &Graph::star(s - 2)])?;
    let h = h.with_edge(Edge { u: 0, v: s - 1 });
    Ok((g, h))
}

/// Disjoint copies of `H_s`.
pub fn star_plus_family(n: usize, s: usize) -> Result<Graph> {
    let (_, h) = star_plus_pair(s)?;
    check_order("star-plus", n)?;
    let block = h.order();
    if !n.is_multiple_of(block) {
        return Err(ConstructionError::Divisibility {
            family: "star-plus",
            n,
            block,
        });
    }
    copies(&h, n / block)
}

/// Smallest `r` such that some bridge `b` leaves components of at most `r`
/// vertices in `f - b`, with that bridge.
pub fn best_bridge(f: &Graph) -> Option<(Edge, usize)> {
    f.bridges()
        .into_iter()
        .map(|b| {
            let cut = f.without_edge(b);
            let largest = cut.components().iter().map(|c| c.len()).max().unwrap_or(0);
            (b, largest)
        })
        .min_by_key(|&(b, r)| (r, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum BridgeVariant {
    /// Disjoint `K_{|F|}` blocks, the last one `K_s` with `|F| <= s < 2|F|`.
    Cliques,
    /// Pairs of `K_r` joined by one edge, remainder in one final clique.
    PairedCliques { r: usize },
}

/// Disjoint `K_{|f|}` blocks, the last enlarged to absorb `n mod |f|`.
pub fn bridge_family(f: &Graph, n: usize) -> Result<Graph> {
    if f.bridges().is_empty() {
        return Err(ConstructionError::NoBridge);
    }
    let k = f.order();
    if n < k {
        return Err(range("bridge", format!("n = {n} is below |F| = {k}")));
    }
    check_order("bridge", n)?;
    blocks_with_last(&Graph::complete(k), n / k, &Graph::complete(k + n % k))
}

/// Pairs of `K_r` joined by the edge from the last vertex of the first
/// clique to the first vertex of the second, where `r` comes from
/// [`best_bridge`]. The remainder `n mod 2r` goes into the final block,
/// which becomes a clique on `2r + (n mod 2r)` vertices; for `n < 2r` the
/// whole graph is `K_n`.
pub fn bridge_pair_family(f: &Graph, n: usize) -> Result<Graph> {
    let (_, r) = best_bridge(f).ok_or(ConstructionError::NoBridge)?;
    if n < f.order() {
        return Err(range("bridge-pair", format!("n = {n} is below |F| = {}", f.order())));
    }
    check_order("bridge-pair", n)?;
    let block = 2 * r;
    if n < block {
        return Ok(Graph::complete(n));
    }
    let pair = Graph::disjoint_union([&Graph::complete(r), &Graph::complete(r)])?.with_edge(Edge { u: r - 1, v: r });
    let count = n / block;
    if n.is_multiple_of(block) {
        copies(&pair, count)
    } else {
        blocks_with_last(&pair, count, &Graph::complete(block + n % block))
    }
}

/// Outcome of [`bridge_construction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeConstruction {
    pub graph: Graph,
    pub variant: BridgeVariant,
    /// Set when the paired variant was built and failed certification.
    pub rejected_pair: Option<PredicateReport>,
}

/// Tries the paired variant first and keeps it only if it certifies as
/// F-dom-sat; otherwise falls back to clique blocks.
pub fn bridge_construction(f: &Graph, n: usize) -> Result<BridgeConstruction> {
    let (_, r) = best_bridge(f).ok_or(ConstructionError::NoBridge)?;
    let paired = bridge_pair_family(f, n)?;
    let report = predicates::is_dom_sat(&paired, f).map_err(|_| ConstructionError::NoQualifyingEdge)?;
    if report.verdict {
        return Ok(BridgeConstruction {
            graph: paired,
            variant: BridgeVariant::PairedCliques { r },
            rejected_pair: None,
        });
    }
    Ok(BridgeConstruction {
        graph: bridge_family(f, n)?,
        variant: BridgeVariant::Cliques,
        rejected_pair: Some(report),
    })
}

/// One row of the neighbourhood scan: `|N(u) ∪ N(w)| = k + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodEdge {
    pub edge: Edge,
    pub k: usize,
}

/// `k` for every edge of `f`, in edge order.
pub fn neighborhood_scan(f: &Graph) -> Vec<NeighborhoodEdge> {
    f.edges()
        .map(|edge| NeighborhoodEdge {
            edge,
            k: f.neighbors(edge.u).union(f.neighbors(edge.v)).len() - 2,
        })
        .collect()
}

/// The edge with minimal `k` (first in edge order on ties).
pub fn neighborhood_edge(f: &Graph) -> Option<NeighborhoodEdge> {
    neighborhood_scan(f).into_iter().min_by_key(|s| s.k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodConstruction {
    pub graph: Graph,
    pub choice: NeighborhoodEdge,
    /// Outside vertices paired up because `δ(F) = k + 1`.
    pub matched: bool,
}

/// `K_{|f|}` on `0..|f|` whose first `k` vertices are joined to every
/// outside vertex `|f|..n`. When `δ(f) = k+1` the outside vertices are also
/// paired consecutively (the last three form a triangle if their number is
/// odd).
pub fn neighborhood_family(f: &Graph, n: usize) -> Result<NeighborhoodConstruction> {
    let choice = neighborhood_edge(f).ok_or(ConstructionError::NoQualifyingEdge)?;
    let size = f.order();
    if n <= size {
        return Err(range("neighborhood", format!("n = {n} must exceed |F| = {size}")));
    }
    check_order("neighborhood", n)?;
    let matched = f.min_degree() == choice.k + 1;
    let outside = if matched {
        if n - size < 2 {
            return Err(range(
                "neighborhood",
                "the matched variant needs at least 2 outside vertices",
            ));
        }
        near_matching(n - size)?
    } else {
        Graph::empty(n - size)
    };
    let mut g = Graph::disjoint_union([&Graph::complete(size), &outside])?;
    for a in 0..choice.k {
        for b in size..n {
            g.set_edge(a, b);
        }
    }
    Ok(NeighborhoodConstruction {
        graph: g,
        choice,
        matched,
    })
}

/// A named builder with its parameters, addressable from the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    NearMatching {
        k: usize,
    },
    DomTuran {
        n: usize,
        r: usize,
    },
    Turan {
        n: usize,
        r: usize,
    },
    Path {
        n: usize,
        r: usize,
    },
    CycleGadget {
        n: usize,
        r: usize,
    },
    CycleGadgetLoops {
        r: usize,
        clique: usize,
        loop_len: usize,
        loops: usize,
    },
    Star {
        n: usize,
        r: usize,
    },
    StarPlus {
        n: usize,
        s: usize,
    },
    Bridge {
        pattern: Graph,
        n: usize,
    },
    Neighborhood {
        pattern: Graph,
        n: usize,
    },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            NearMatching { k } => write!(f, "near-matching(k={k})"),
            DomTuran { n, r } => write!(f, "dom-turan(n={n}, r={r})"),
            Turan { n, r } => write!(f, "turan(n={n}, r={r})"),
            Path { n, r } => write!(f, "path(n={n}, r={r})"),
            CycleGadget { n, r } => write!(f, "cycle-gadget(n={n}, r={r})"),
            CycleGadgetLoops {
                r,
                clique,
                loop_len,
                loops,
            } => write!(
                f,
                "cycle-gadget(r={r}, clique={clique}, loop-len={loop_len}, loops={loops})"
            ),
            Star { n, r } => write!(f, "star(n={n}, r={r})"),
            StarPlus { n, s } => write!(f, "star-plus(n={n}, s={s})"),
            Bridge { pattern, n } => write!(f, "bridge(pattern={}, n={n})", crate::graph6::encode(pattern)),
            Neighborhood { pattern, n } => {
                write!(f, "neighborhood(pattern={}, n={n})", crate::graph6::encode(pattern))
            }
        }
    }
}

impl FamilySpec {
    /// Builds the graph. With `pad`, families with a divisibility condition
    /// put the remainder into one larger final block instead of failing.
    pub fn build(&self, pad: bool) -> Result<Graph> {
        use FamilySpec::*;
        match self {
            NearMatching { k } => near_matching(*k),
            DomTuran { n, r } => dom_turan(*n, *r),
            Turan { n, r } => turan(*n, *r),
            Path { n, r } if pad => path_family_padded(*n, *r),
            Path { n, r } => path_family(*n, *r),
            CycleGadget { n, r } => cycle_gadget(*n, *r),
            CycleGadgetLoops {
                r,
                clique,
                loop_len,
                loops,
            } => {
                if *r < 4 {
                    return Err(range("cycle-gadget", format!("r = {r} must be at least 4")));
                }
                cycle_gadget_with_loops(*clique, *loop_len, *loops)
            }
            Star { n, r } if pad => star_family_padded(*n, *r),
            Star { n, r } => star_family(*n, *r),
            StarPlus { n, s } => star_plus_family(*n, *s),
            Bridge { pattern, n } => bridge_construction(pattern, *n).map(|c| c.graph),
            Neighborhood { pattern, n } => neighborhood_family(pattern, *n).map(|c| c.graph),
        }
    }

    /// The pattern and predicate the family is claimed to satisfy, if any.
    pub fn claim(&self) -> Option<(Graph, PredicateKind)> {
        use FamilySpec::*;
        let dom_sat = |g: Graph| Some((g, PredicateKind::DomSat));
        match self {
            NearMatching { .. } => None,
            DomTuran { r, .. } => dom_sat(Graph::complete(*r)),
            Turan { r, .. } => Some((Graph::complete(r + 1), PredicateKind::Saturated)),
            Path { r, .. } => dom_sat(Graph::path(*r)),
            CycleGadget { r, .. } | CycleGadgetLoops { r, .. } => dom_sat(Graph::cycle(*r)),
            Star { r, .. } => dom_sat(Graph::star(*r)),
            StarPlus { s, .. } => star_plus_pair(*s).ok().and_then(|(g, _)| dom_sat(g)),
            Bridge { pattern, .. } | Neighborhood { pattern, .. } => dom_sat(pattern.clone()),
        }
    }

    /// Runs the claimed predicate on `g`.
    pub fn certify(&self, g: &Graph) -> Option<PredicateReport> {
        let (pattern, kind) = self.claim()?;
        predicates::evaluate(kind, g, &pattern).ok()
    }
}
