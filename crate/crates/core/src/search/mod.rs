//! Exact minimum edge counts over all `n`-vertex graphs.
//!
//! For each candidate edge count `m`, the classes at level `m` are
//! generated and tested in parallel; the first `m` with a passing class is
//! the answer and every passing class there is a witness. With pruning on,
//! generation drops graphs that cannot grow into a passing graph with `m`
//! edges:
//!
//! * degree floors: a vertex with a non-neighbour needs degree at least
//!   `δ(F) - 1` in a semi-saturated host, and a vertex on a dominated edge
//!   needs degree at least `δ(F)`;
//! * at most one isolated vertex, unless `F` has a `K_2` component (two
//!   isolated vertices joined by a new edge only form a `K_2`);
//! * a saturated host is `F`-free, and freeness is inherited by subgraphs.
//!
//! Each added edge raises the total degree by 2, so a graph whose degree
//! deficit exceeds twice the number of edges still to add is dropped.

mod cache;
pub mod enumerate;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::Density;
use crate::canon::canonical_form;
use crate::graph::Graph;
use crate::graph6;
use crate::iso::embedding_exists;
use crate::predicates::{self, lemma_tree_witness, lemma_tree_witness_by_cases, PredicateKind, TreeWitness};

pub use cache::{CacheError, ResultCache, CACHE_ENV, CACHE_SCHEMA};
pub use enumerate::{enumerate_graphs, EnumerateError, Levels, MAX_ENUM_ORDER};

/// Default largest host order for [`min_edges`].
pub const MAX_SEARCH_ORDER: usize = 9;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("pattern has no edges")]
    EdgelessPattern,
    #[error("search over {0} is not supported; use saturated, semi-saturated, dom-sat or weakly-saturated")]
    UnsupportedPredicate(PredicateKind),
    #[error("n = {n} is below the pattern order {order}")]
    TooSmall { n: usize, order: usize },
    #[error("n = {n} exceeds the search cap of {cap} vertices")]
    Cap { n: usize, cap: usize },
    #[error("no {n}-vertex graph passes; this indicates an internal error")]
    NoPassingGraph { n: usize },
    #[error("witness {0} failed re-verification")]
    Reverify(String),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Cache(#[from] CacheError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub prune: bool,
    pub max_order: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            max_order: MAX_SEARCH_ORDER,
        }
    }
}

/// Outcome of [`min_edges`]. `elapsed` is informational and excluded from
/// equality and serialization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    /// Canonical graph6 of the pattern.
    pub pattern: String,
    pub predicate: PredicateKind,
    pub min_edges: usize,
    /// Canonical graph6 of every passing class with `min_edges` edges, sorted.
    pub witnesses: Vec<String>,
    /// Classes tested against the predicate over the whole sweep.
    pub graphs_examined: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for SearchResult {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.pattern == other.pattern
            && self.predicate == other.predicate
            && self.min_edges == other.min_edges
            && self.witnesses == other.witnesses
            && self.graphs_examined == other.graphs_examined
    }
}

impl Eq for SearchResult {}

impl SearchResult {
    /// Decodes and re-checks every witness.
    pub fn verify(&self, pattern: &Graph) -> Result<(), SearchError> {
        if self.witnesses.is_empty() {
            return Err(SearchError::Reverify("<none>".into()));
        }
        for w in &self.witnesses {
            let ok = graph6::decode(w).is_ok_and(|g| {
                g.order() == self.n
                    && g.size() == self.min_edges
                    && predicates::evaluate(self.predicate, &g, pattern).is_ok_and(|r| r.verdict)
            });
            if !ok {
                return Err(SearchError::Reverify(w.clone()));
            }
        }
        Ok(())
    }
}

/// Pruning parameters derived from the pattern and predicate.
#[derive(Debug, Clone, Copy)]
struct Floors {
    /// Floor for every vertex (semi-saturation).
    all: usize,
    /// Floor for non-isolated vertices (domination).
    touched: usize,
    /// Isolated vertices allowed.
    isolated: usize,
    free: bool,
}

impl Floors {
    fn new(pattern: &Graph, predicate: PredicateKind) -> Floors {
        let d = pattern.min_degree();
        let has_k2 = pattern.components().iter().any(|c| {
            c.len() == 2 && {
                let mut it = c.iter();
                let (a, b) = (it.next().unwrap(), it.next().unwrap());
                pattern.has_edge(a, b)
            }
        });
        let semi = matches!(
            predicate,
            PredicateKind::SemiSaturated | PredicateKind::Saturated | PredicateKind::DomSat
        );
        let dom = predicate == PredicateKind::DomSat;
        Floors {
            all: if semi { d.saturating_sub(1) } else { 0 },
            touched: if dom { d } else { 0 },
            isolated: if semi && !has_k2 { 1 } else { usize::MAX },
            free: predicate == PredicateKind::Saturated,
        }
    }

    /// Least total degree increase needed before `g` can pass.
    fn deficit(&self, g: &Graph) -> usize {
        let floor = self.all.max(self.touched).max(1);
        let mut deficit = 0;
        let mut isolated = 0;
        for v in 0..g.order() {
            let d = g.degree(v);
            if d == 0 {
                isolated += 1;
            } else {
                deficit += floor.saturating_sub(d);
            }
        }
        let may_stay = if self.all == 0 { self.isolated.min(isolated) } else { 0 };
        deficit + (isolated - may_stay) * floor
    }

    fn feasible(&self, g: &Graph, edges: usize, target: usize, pattern: &Graph) -> bool {
        if self.deficit(g) > 2 * (target - edges) {
            return false;
        }
        !(self.free && embedding_exists(pattern, g).is_some())
    }

    fn first_target(&self, n: usize) -> usize {
        self.deficit(&Graph::empty(n)).div_ceil(2).max(1)
    }
}

fn check_request(
    pattern: &Graph,
    n: usize,
    predicate: PredicateKind,
    options: &SearchOptions,
) -> Result<(), SearchError> {
    if pattern.size() == 0 {
        return Err(SearchError::EdgelessPattern);
    }
    if !matches!(
        predicate,
        PredicateKind::Saturated
            | PredicateKind::SemiSaturated
            | PredicateKind::DomSat
            | PredicateKind::WeaklySaturated
    ) {
        return Err(SearchError::UnsupportedPredicate(predicate));
    }
    let cap = options.max_order.min(MAX_ENUM_ORDER);
    if n > cap {
        return Err(SearchError::Cap { n, cap });
    }
    if n < pattern.order() {
        return Err(SearchError::TooSmall {
            n,
            order: pattern.order(),
        });
    }
    Ok(())
}

/// Least `m` such that some `n`-vertex, `m`-edge graph with at least one
/// edge satisfies `predicate` for `pattern`, with all passing classes at
/// that `m`.
pub fn min_edges(
    pattern: &Graph,
    n: usize,
    predicate: PredicateKind,
    options: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    check_request(pattern, n, predicate, options)?;
    let started = Instant::now();
    let floors = Floors::new(pattern, predicate);
    let max_m = n * (n - 1) / 2;
    let start = if options.prune { floors.first_target(n) } else { 1 };
    let mut examined = 0u64;

    let mut unpruned = if options.prune { None } else { Some(Levels::new(n)?) };
    for target in start..=max_m {
        let pruned_levels;
        let level: &[enumerate::Node] = match unpruned.as_mut() {
            Some(levels) => levels.advance_to(target)?,
            None => {
                let mut levels = Levels::with_filter(n, |g, m| floors.feasible(g, m, target, pattern))?;
                levels.advance_to(target)?;
                pruned_levels = levels;
                pruned_levels.current()
            }
        };
        examined += level.len() as u64;
        let mut witnesses: Vec<String> = level
            .par_iter()
            .filter(|node| predicates::evaluate(predicate, &node.graph, pattern).is_ok_and(|r| r.verdict))
            .map(|node| graph6::encode(&node.graph))
            .collect();
        if witnesses.is_empty() {
            continue;
        }
        witnesses.sort();
        let result = SearchResult {
            n,
            pattern: graph6::encode(&canonical_form(pattern)),
            predicate,
            min_edges: target,
            witnesses,
            graphs_examined: examined,
            elapsed: started.elapsed(),
        };
        result.verify(pattern)?;
        return Ok(result);
    }
    Err(SearchError::NoPassingGraph { n })
}

/// As [`min_edges`], consulting and updating `cache`.
pub fn min_edges_cached(
    pattern: &Graph,
    n: usize,
    predicate: PredicateKind,
    options: &SearchOptions,
    cache: &mut ResultCache,
) -> Result<SearchResult, SearchError> {
    check_request(pattern, n, predicate, options)?;
    if let Some(hit) = cache.get(pattern, n, predicate) {
        return Ok(hit);
    }
    let result = min_edges(pattern, n, predicate, options)?;
    cache.put(&result)?;
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub n: usize,
    pub min_edges: usize,
    pub density: Density,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub pattern: String,
    pub predicate: PredicateKind,
    pub rows: Vec<ProfileRow>,
}

impl DensityProfile {
    /// Whether densities never drop from one row to the next.
    pub fn non_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].density <= w[1].density)
    }

    /// Rows `(n, n+1)` where the density drops.
    pub fn decreases(&self) -> Vec<(usize, usize)> {
        self.rows
            .windows(2)
            .filter(|w| w[0].density > w[1].density)
            .map(|w| (w[0].n, w[1].n))
            .collect()
    }

    /// `reference - density` at the last row.
    pub fn final_gap(&self, reference: Density) -> Option<Density> {
        self.rows.last().map(|r| Density(reference.0 - r.density.0))
    }
}

/// Minimum edge counts for `n = |pattern| ..= n_max`.
pub fn density_profile(
    pattern: &Graph,
    n_max: usize,
    predicate: PredicateKind,
    options: &SearchOptions,
    mut cache: Option<&mut ResultCache>,
) -> Result<DensityProfile, SearchError> {
    let start = pattern.order().max(2);
    let mut rows = Vec::new();
    for n in start..=n_max {
        let result = match cache.as_deref_mut() {
            Some(c) => min_edges_cached(pattern, n, predicate, options, c)?,
            None => min_edges(pattern, n, predicate, options)?,
        };
        rows.push(ProfileRow {
            n,
            min_edges: result.min_edges,
            density: Density::new(result.min_edges as i64, n as i64),
        });
    }
    Ok(DensityProfile {
        pattern: graph6::encode(&canonical_form(pattern)),
        predicate,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSuiteReport {
    pub j: usize,
    pub trees: usize,
    pub stars: usize,
    pub pairs: usize,
    /// Trees where the case analysis alone produced a verified pair.
    pub by_cases: usize,
    /// graph6 of trees with no valid witness.
    pub failures: Vec<String>,
}

impl LemmaSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the tree witness on every tree with `3 <= t < 3j` vertices.
pub fn verify_lemma_suite(j: usize) -> Result<LemmaSuiteReport, SearchError> {
    if !(2..=3).contains(&j) {
        return Err(SearchError::Cap { n: 3 * j - 1, cap: 8 });
    }
    let mut report = LemmaSuiteReport {
        j,
        trees: 0,
        stars: 0,
        pairs: 0,
        by_cases: 0,
        failures: Vec::new(),
    };
    for t in 3..3 * j {
        for tree in enumerate::trees(t)? {
            report.trees += 1;
            match lemma_tree_witness(&tree, j) {
                Ok(TreeWitness::Star) => report.stars += 1,
                Ok(TreeWitness::Pair { u, v }) if predicates::is_valid_lemma_pair(&tree, j, u, v) => {
                    report.pairs += 1;
                    if matches!(
                        lemma_tree_witness_by_cases(&tree, j),
                        Ok(Some(TreeWitness::Pair { .. }))
                    ) {
                        report.by_cases += 1;
                    }
                }
                _ => report.failures.push(graph6::encode(&tree)),
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(pattern: &Graph, n: usize, predicate: PredicateKind) -> SearchResult {
        min_edges(pattern, n, predicate, &SearchOptions::default()).unwrap()
    }

    #[test]
    fn triangle_dom_sat_small() {
        let k3 = Graph::complete(3);
        let r = run(&k3, 4, PredicateKind::DomSat);
        assert_eq!(r.min_edges, 5);
        let k4e = Graph::complete(4).without_edge(crate::graph::Edge { u: 2, v: 3 });
        assert_eq!(r.witnesses, vec![graph6::encode(&canonical_form(&k4e))]);
        assert_eq!(run(&k3, 5, PredicateKind::DomSat).min_edges, 6);
    }

    #[test]
    fn triangle_saturated() {
        let r = run(&Graph::complete(3), 5, PredicateKind::Saturated);
        assert_eq!(r.min_edges, 4);
        assert_eq!(r.witnesses, vec![graph6::encode(&canonical_form(&Graph::star(4)))]);
    }

    #[test]
    fn single_edge_pattern() {
        for n in 2..=7 {
            assert_eq!(run(&Graph::complete(2), n, PredicateKind::DomSat).min_edges, 1);
        }
    }

    #[test]
    fn p3_dom_sat_six() {
        let r = run(&Graph::path(3), 6, PredicateKind::DomSat);
        assert_eq!(r.min_edges, 4);
        assert!(r.witnesses.len() >= 3);
    }

    #[test]
    fn pruning_agrees() {
        let off = SearchOptions {
            prune: false,
            ..SearchOptions::default()
        };
        for f in [Graph::complete(3), Graph::path(3)] {
            for p in [PredicateKind::DomSat, PredicateKind::Saturated] {
                let a = min_edges(&f, 5, p, &SearchOptions::default()).unwrap();
                let b = min_edges(&f, 5, p, &off).unwrap();
                assert_eq!((a.min_edges, &a.witnesses), (b.min_edges, &b.witnesses));
            }
        }
    }

    #[test]
    fn request_errors() {
        let k3 = Graph::complete(3);
        let opts = SearchOptions::default();
        assert!(matches!(
            min_edges(&k3, 30, PredicateKind::DomSat, &opts),
            Err(SearchError::Cap { n: 30, .. })
        ));
        assert!(matches!(
            min_edges(&k3, 5, PredicateKind::Dominated, &opts),
            Err(SearchError::UnsupportedPredicate(_))
        ));
        assert!(matches!(
            min_edges(&Graph::empty(2), 5, PredicateKind::DomSat, &opts),
            Err(SearchError::EdgelessPattern)
        ));
        assert!(matches!(
            min_edges(&Graph::complete(4), 3, PredicateKind::DomSat, &opts),
            Err(SearchError::TooSmall { .. })
        ));
    }

    #[test]
    fn profile_rows() {
        let p = density_profile(
            &Graph::complete(2),
            5,
            PredicateKind::DomSat,
            &SearchOptions::default(),
            None,
        )
        .unwrap();
        assert_eq!(p.rows.iter().map(|r| r.min_edges).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        assert!(!p.non_decreasing());
    }

    #[test]
    fn lemma_suite_small() {
        let r = verify_lemma_suite(2).unwrap();
        assert_eq!(r.trees, 6);
        assert!(r.passed());
        let r = verify_lemma_suite(3).unwrap();
        assert_eq!(r.trees, 46);
        assert!(r.passed());
    }
}
