//! Saturation predicates with re-checkable certificates.
//!
//! All predicates use non-induced copies and reject edgeless patterns.
//! Semi-saturation is decided by asking for a copy through each added
//! non-edge: the copies of `F` in `G + e` that are not in `G` are exactly
//! those using `e`, so no copy counting is needed.

mod tree_lemma;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph};
use crate::iso::{anchored, embedding_exists, Embedding};

pub use tree_lemma::{is_valid_lemma_pair, lemma_tree_witness, lemma_tree_witness_by_cases, LemmaError, TreeWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredicateError {
    #[error("pattern has no edges")]
    EdgelessPattern,
    #[error("unknown predicate {0:?}; expected one of free, saturated, semi-saturated, dominated, dom-sat, weakly-saturated")]
    UnknownPredicate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredicateKind {
    Free,
    Saturated,
    SemiSaturated,
    Dominated,
    DomSat,
    WeaklySaturated,
}

impl PredicateKind {
    pub const ALL: [PredicateKind; 6] = [
        PredicateKind::Free,
        PredicateKind::Saturated,
        PredicateKind::SemiSaturated,
        PredicateKind::Dominated,
        PredicateKind::DomSat,
        PredicateKind::WeaklySaturated,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PredicateKind::Free => "free",
            PredicateKind::Saturated => "saturated",
            PredicateKind::SemiSaturated => "semi-saturated",
            PredicateKind::Dominated => "dominated",
            PredicateKind::DomSat => "dom-sat",
            PredicateKind::WeaklySaturated => "weakly-saturated",
        }
    }
}

impl fmt::Display for PredicateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PredicateKind {
    type Err = PredicateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('_', "-");
        PredicateKind::ALL
            .into_iter()
            .find(|k| k.as_str() == norm)
            .ok_or_else(|| PredicateError::UnknownPredicate(s.to_string()))
    }
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Nothing to show (a pass, except for weak saturation).
    None,
    /// Adding this non-edge creates no new copy.
    ViolatingNonEdge { edge: Edge },
    /// This edge lies in no copy.
    UncoveredEdge { edge: Edge },
    /// A copy of the pattern in a graph required to be free.
    ForbiddenCopy { embedding: Embedding },
    /// Non-edges of the graph where the greedy closure got stuck.
    ClosureGap { missing: Vec<Edge> },
    /// Order in which the closure added the complement, on success.
    ClosureOrder { order: Vec<Edge> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateReport {
    pub predicate: PredicateKind,
    pub verdict: bool,
    pub certificate: Certificate,
}

impl PredicateReport {
    fn pass(predicate: PredicateKind) -> Self {
        PredicateReport {
            predicate,
            verdict: true,
            certificate: Certificate::None,
        }
    }

    fn fail(predicate: PredicateKind, certificate: Certificate) -> Self {
        PredicateReport {
            predicate,
            verdict: false,
            certificate,
        }
    }

    /// Re-checks the certificate against `(g, f)`. Failures are confirmed
    /// from the certificate alone; plain passes are confirmed by
    /// re-evaluating the predicate.
    pub fn replay(&self, g: &Graph, f: &Graph) -> bool {
        use Certificate as C;
        match (&self.certificate, self.verdict) {
            (C::None, true) => evaluate(self.predicate, g, f).is_ok_and(|r| r.verdict),
            (C::ViolatingNonEdge { edge }, false) => {
                matches!(
                    self.predicate,
                    PredicateKind::SemiSaturated | PredicateKind::Saturated | PredicateKind::DomSat
                ) && edge.v < g.order()
                    && !g.contains_edge(*edge)
                    && anchored(f, &g.with_edge(*edge), *edge).is_none()
            }
            (C::UncoveredEdge { edge }, false) => {
                matches!(self.predicate, PredicateKind::Dominated | PredicateKind::DomSat)
                    && g.contains_edge(*edge)
                    && anchored(f, g, *edge).is_none()
            }
            (C::ForbiddenCopy { embedding }, false) => {
                matches!(self.predicate, PredicateKind::Free | PredicateKind::Saturated) && embedding.is_valid(f, g)
            }
            (C::ClosureGap { missing }, false) => {
                self.predicate == PredicateKind::WeaklySaturated && replay_gap(g, f, missing)
            }
            (C::ClosureOrder { order }, true) => {
                self.predicate == PredicateKind::WeaklySaturated && replay_order(g, f, order)
            }
            _ => false,
        }
    }
}

fn require_edges(f: &Graph) -> Result<(), PredicateError> {
    if f.size() == 0 {
        Err(PredicateError::EdgelessPattern)
    } else {
        Ok(())
    }
}

pub fn evaluate(kind: PredicateKind, g: &Graph, f: &Graph) -> Result<PredicateReport, PredicateError> {
    match kind {
        PredicateKind::Free => is_free(g, f),
        PredicateKind::Saturated => is_saturated(g, f),
        PredicateKind::SemiSaturated => is_semi_saturated(g, f),
        PredicateKind::Dominated => is_dominated(g, f),
        PredicateKind::DomSat => is_dom_sat(g, f),
        PredicateKind::WeaklySaturated => is_weakly_saturated(g, f),
    }
}

pub fn is_free(g: &Graph, f: &Graph) -> Result<PredicateReport, PredicateError> {
    require_edges(f)?;
    Ok(match embedding_exists(f, g) {
        None => PredicateReport::pass(PredicateKind::Free),
        Some(embedding) => PredicateReport::fail(PredicateKind::Free, Certificate::ForbiddenCopy { embedding }),
    })
}

/// First non-edge of `g` (lexicographic) whose addition creates no new copy of `f`.
fn first_violation(g: &Graph, f: &Graph) -> Option<Edge> {
    let mut h = g.clone();
    for e in g.non_edges() {
        h.set_edge(e.u, e.v);
        let ok = anchored(f, &h, e).is_some();
        h.clear_edge(e.u, e.v);
        if !ok {
            return Some(e);
        }
    }
    None
}

/// Every non-edge of `g` whose addition creates no new copy of `f`.
pub fn semi_saturation_violations(g: &Graph, f: &Graph) -> Result<Vec<Edge>, PredicateError> {
    require_edges(f)?;
    Ok(g.non_edges()
        .filter(|&e| anchored(f, &g.with_edge(e), e).is_none())
        .collect())
}

pub fn is_semi_saturated(g: &Graph, f: &Graph) -> Result<PredicateReport, PredicateError> {
    require_edges(f)?;
    Ok(match first_violation(g, f) {
        None => PredicateReport::pass(PredicateKind::SemiSaturated),
        Some(edge) => PredicateReport::fail(PredicateKind::SemiSaturated, Certificate::ViolatingNonEdge { edge }),
    })
}

pub fn is_saturated(g: &Graph, f: &Graph) -> Result<PredicateReport, PredicateError> {
    let free = is_free(g, f)?;
    if !free.verdict {
        return Ok(PredicateReport::fail(PredicateKind::Saturated, free.certificate));
    }
    let semi = is_semi_saturated(g, f)?;
    Ok(PredicateReport {
        predicate: PredicateKind::Saturated,
        ..semi
    })
}

fn first_uncovered(g: &Graph, f: &Graph) -> Option<Edge> {
    g.edges().find(|&e| anchored(f, g, e).is_none())
}

pub fn is_dominated(g: &Graph, f: &Graph) -> Result<PredicateReport, PredicateError> {
    require_edges(f)?;
    Ok(match first_uncovered(g, f) {
        None => PredicateReport::pass(PredicateKind::Dominated),
        Some(edge) => PredicateReport::fail(PredicateKind::Dominated, Certificate::UncoveredEdge { edge }),
    })
}

pub fn is_dom_sat(g: &Graph, f: &Graph) -> Result<PredicateReport, PredicateError> {
    let dom = is_dominated(g, f)?;
    if !dom.verdict {
        return Ok(PredicateReport::fail(PredicateKind::DomSat, dom.certificate));
    }
    let semi = is_semi_saturated(g, f)?;
    Ok(PredicateReport {
        predicate: PredicateKind::DomSat,
        ..semi
    })
}

/// Greedy closure: repeatedly add any non-edge that lies in a copy of `f`
/// once added. Adding edges never removes such opportunities, so the
/// closure is the same whatever order is used.
fn closure(g: &Graph, f: &Graph) -> (Graph, Vec<Edge>) {
    let mut h = g.clone();
    let mut order = Vec::new();
    loop {
        let mut grew = false;
        let pending: Vec<Edge> = h.non_edges().collect();
        for e in pending {
            h.set_edge(e.u, e.v);
            if anchored(f, &h, e).is_some() {
                order.push(e);
                grew = true;
            } else {
                h.clear_edge(e.u, e.v);
            }
        }
        if !grew {
            return (h, order);
        }
    }
}

pub fn is_weakly_saturated(g: &Graph, f: &Graph) -> Result<PredicateReport, PredicateError> {
    require_edges(f)?;
    let (stuck, order) = closure(g, f);
    Ok(if stuck.is_complete() {
        PredicateReport {
            predicate: PredicateKind::WeaklySaturated,
            verdict: true,
            certificate: Certificate::ClosureOrder { order },
        }
    } else {
        PredicateReport::fail(
            PredicateKind::WeaklySaturated,
            Certificate::ClosureGap {
                missing: stuck.non_edges().collect(),
            },
        )
    })
}

fn replay_order(g: &Graph, f: &Graph, order: &[Edge]) -> bool {
    let mut h = g.clone();
    for &e in order {
        if e.v >= h.order() || h.contains_edge(e) {
            return false;
        }
        h.set_edge(e.u, e.v);
        if anchored(f, &h, e).is_none() {
            return false;
        }
    }
    h.is_complete()
}

/// A closed proper supergraph of `g` bounds the closure of `g` from above.
fn replay_gap(g: &Graph, f: &Graph, missing: &[Edge]) -> bool {
    if missing.is_empty() || missing.iter().any(|e| e.v >= g.order() || g.contains_edge(*e)) {
        return false;
    }
    let mut stuck = Graph::complete(g.order());
    for e in missing {
        stuck.clear_edge(e.u, e.v);
    }
    missing.iter().all(|&e| anchored(f, &stuck.with_edge(e), e).is_none())
}
