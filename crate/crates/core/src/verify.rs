//! Property batteries over small graphs: composition facts, degree and
//! connectivity consequences, the tree witness, constructions and the
//! closed-form counts.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{dsat_clique_upper_edges, sat_clique};
use crate::connectivity::{is_k_connected, is_k_edge_connected};
use crate::constructions::{self as cons, FamilySpec};
use crate::graph::Graph;
use crate::graph6;
use crate::predicates::{is_dominated, is_semi_saturated, Certificate, PredicateKind};
use crate::search::{self, enumerate::Levels, SearchOptions};

/// Pattern pool for the fact batteries.
pub fn pattern_pool() -> Vec<(&'static str, Graph)> {
    vec![
        ("K3", Graph::complete(3)),
        ("K4", Graph::complete(4)),
        ("C4", Graph::cycle(4)),
        ("C5", Graph::cycle(5)),
        ("P3", Graph::path(3)),
        ("P4", Graph::path(4)),
        ("K1,3", Graph::star(3)),
    ]
}

/// Every isomorphism class with `2..=max_n` vertices and at least one edge.
pub fn host_pool(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let mut levels = Levels::new(n).expect("pool orders are in range");
        while levels.advance() {
            out.extend(levels.current().iter().map(|node| node.graph.clone()));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Facts,
    Connectivity,
    LemmaTrees,
    Constructions,
    Formulas,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite {0:?}; expected one of facts, connectivity, lemma-trees, constructions, formulas")]
pub struct UnknownSuite(pub String);

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Facts,
        Suite::Connectivity,
        Suite::LemmaTrees,
        Suite::Constructions,
        Suite::Formulas,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Facts => "facts",
            Suite::Connectivity => "connectivity",
            Suite::LemmaTrees => "lemma-trees",
            Suite::Constructions => "constructions",
            Suite::Formulas => "formulas",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s.replace('_', "-"))
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn run_suite(suite: Suite) -> SuiteReport {
    let checks = match suite {
        Suite::Facts => facts(6),
        Suite::Connectivity => connectivity(6),
        Suite::LemmaTrees => lemma_trees(),
        Suite::Constructions => constructions(),
        Suite::Formulas => formulas(8),
    };
    SuiteReport { suite, checks }
}

/// `rel[h][g]` for hosts `h` and patterns `g`, with edgeless patterns false.
fn relation(hosts: &[Graph], patterns: &[Graph], f: fn(&Graph, &Graph) -> bool) -> Vec<Vec<bool>> {
    hosts
        .par_iter()
        .map(|h| patterns.iter().map(|g| f(h, g)).collect())
        .collect()
}

fn dominated(h: &Graph, g: &Graph) -> bool {
    is_dominated(h, g).is_ok_and(|r| r.verdict)
}

fn semi(h: &Graph, g: &Graph) -> bool {
    is_semi_saturated(h, g).is_ok_and(|r| r.verdict)
}

/// Transitivity of domination and its compositions with semi-saturation,
/// and the degree consequences, over all hosts up to `max_n` vertices.
pub fn facts(max_n: usize) -> Vec<Check> {
    let pool = host_pool(max_n);
    let patterns = pattern_pool();
    let fs: Vec<Graph> = patterns.iter().map(|(_, g)| g.clone()).collect();
    let dom_all = relation(&pool, &pool, dominated);
    let semi_all = relation(&pool, &pool, semi);
    let dom_f = relation(&pool, &fs, dominated);
    let semi_f = relation(&pool, &fs, semi);
    let dom_sat_all = |h: usize, g: usize| dom_all[h][g] && semi_all[h][g];

    let mut a = Check::new("domination is transitive");
    let mut b = Check::new("F-dominated G, G-semi-saturated H => H F-semi-saturated");
    let mut c = Check::new("F-dominated G, G-dom-sat H => H F-dom-sat");
    let mut d = Check::new("dom-sat is transitive");
    for (fi, (fname, _)) in patterns.iter().enumerate() {
        for gi in 0..pool.len() {
            let g_dom = dom_f[gi][fi];
            let g_dom_sat = g_dom && semi_f[gi][fi];
            if !g_dom {
                continue;
            }
            for hi in 0..pool.len() {
                let name = || {
                    format!(
                        "F={fname} G={} H={}",
                        graph6::encode(&pool[gi]),
                        graph6::encode(&pool[hi])
                    )
                };
                let h_dom_f = dom_f[hi][fi];
                let h_semi_f = semi_f[hi][fi];
                if dom_all[hi][gi] {
                    a.record(h_dom_f, name);
                }
                if semi_all[hi][gi] {
                    b.record(h_semi_f, name);
                }
                if dom_sat_all(hi, gi) {
                    c.record(h_dom_f && h_semi_f, name);
                    if g_dom_sat {
                        d.record(h_dom_f && h_semi_f, name);
                    }
                }
            }
        }
    }

    let mut deg_a = Check::new("F-dominated G with no isolated vertex has min degree >= min degree of F");
    let mut deg_b = Check::new("F-semi-saturated G has min degree >= min degree of F minus 1");
    for (fi, (fname, f)) in patterns.iter().enumerate() {
        for (hi, h) in pool.iter().enumerate() {
            if h.order() < f.order() {
                continue;
            }
            let name = || format!("F={fname} G={}", graph6::encode(h));
            if dom_f[hi][fi] && h.min_degree() >= 1 {
                deg_a.record(h.min_degree() >= f.min_degree(), name);
            }
            if semi_f[hi][fi] {
                deg_b.record(h.min_degree() + 1 >= f.min_degree(), name);
            }
        }
    }
    vec![a, b, c, d, deg_a, deg_b]
}

/// Largest `k` such that every component of `f` is `k`-connected
/// (`edge = true`: `k`-edge-connected).
fn component_connectivity(f: &Graph, edge: bool) -> usize {
    let parts: Vec<Graph> = f.components().into_iter().filter_map(|c| f.induced(c)).collect();
    let holds = |k: usize| {
        parts.iter().all(|p| {
            if edge {
                is_k_edge_connected(p, k)
            } else {
                is_k_connected(p, k)
            }
        })
    };
    (1..).take_while(|&k| holds(k)).last().unwrap_or(0)
}

/// Semi-saturated hosts are `(k-1)`-connected and dom-sat hosts
/// `(k-1)`-edge-connected when every component of the pattern is
/// `k`-connected (resp. `k`-edge-connected).
pub fn connectivity(max_n: usize) -> Vec<Check> {
    let pool = host_pool(max_n);
    let mut vertex = Check::new("semi-saturated host is (k-1)-connected");
    let mut edge = Check::new("dom-sat host is (k-1)-edge-connected");
    for (fname, f) in pattern_pool() {
        let kv = component_connectivity(&f, false);
        let ke = component_connectivity(&f, true);
        let rows: Vec<(bool, bool, &Graph)> = pool
            .par_iter()
            .filter(|h| h.order() >= f.order())
            .map(|h| (semi(h, &f), dominated(h, &f), h))
            .collect();
        for (is_semi, is_dom, h) in rows {
            let name = || format!("F={fname} G={}", graph6::encode(h));
            if is_semi && kv >= 2 {
                vertex.record(is_k_connected(h, kv - 1), name);
            }
            if is_semi && is_dom && ke >= 2 {
                edge.record(is_k_edge_connected(h, ke - 1), name);
            }
        }
    }
    vec![vertex, edge]
}

pub fn lemma_trees() -> Vec<Check> {
    [2, 3]
        .into_iter()
        .map(|j| {
            let mut check = Check::new(format!("tree witness for j = {j}"));
            match search::verify_lemma_suite(j) {
                Ok(report) => {
                    check.cases = report.trees as u64;
                    check.failures = report.failures;
                }
                Err(e) => check.failures.push(e.to_string()),
            }
            check
        })
        .collect()
}

fn certify(check: &mut Check, spec: FamilySpec, expect: bool) {
    let outcome = spec.build(false).map(|g| {
        let report = spec.certify(&g);
        (g, report)
    });
    match outcome {
        Ok((_, Some(report))) => {
            let ok = report.verdict == expect;
            check.record(ok, || format!("{spec}: verdict {}", report.verdict));
        }
        Ok((_, None)) => check.record(false, || format!("{spec}: nothing to certify")),
        Err(e) => check.record(false, || format!("{spec}: {e}")),
    }
}

/// Each family passes its claimed predicate over the stated parameter
/// ranges; the long-loop cycle gadget fails as expected.
pub fn constructions() -> Vec<Check> {
    let mut dom_turan = Check::new("D(n,r) is K_r-dom-sat with the closed-form edge count");
    for r in 3..=6 {
        for n in r..=20 {
            let spec = FamilySpec::DomTuran { n, r };
            certify(&mut dom_turan, spec, true);
            let built = cons::dom_turan(n, r).map(|g| g.size() as u64).ok();
            let formula = dsat_clique_upper_edges(n, r).ok();
            dom_turan.record(built.is_some() && built == formula, || {
                format!("D({n},{r}): {built:?} edges vs formula {formula:?}")
            });
        }
    }

    let mut path = Check::new("disjoint paths are P_r-dom-sat");
    for r in 3..=7 {
        let c = cons::path_component(r);
        for n in [c, 2 * c] {
            certify(&mut path, FamilySpec::Path { n, r }, true);
        }
    }

    let mut cycle = Check::new("cycle gadget is C_r-dom-sat");
    for r in 4..=7 {
        let l = r;
        for loops in [1, 2] {
            let n = l + loops * (r - 3);
            certify(&mut cycle, FamilySpec::CycleGadget { n, r }, true);
        }
    }

    let mut star = Check::new("K_{r-1,r} blocks are K_1,r-dom-sat");
    for r in 2..=5 {
        for blocks in [1, 2] {
            certify(
                &mut star,
                FamilySpec::Star {
                    n: blocks * (2 * r - 1),
                    r,
                },
                true,
            );
        }
    }

    let mut star_plus = Check::new("H_s blocks are G_s-dom-sat");
    for s in 4..=8 {
        certify(&mut star_plus, FamilySpec::StarPlus { n: 2 * (2 * s - 2), s }, true);
    }

    vec![dom_turan, path, cycle, star, star_plus, negative_control()]
}

/// Cycle gadget with loops of `r-2` vertices fails semi-saturation, with
/// the certificate joining corresponding vertices of two loops.
pub fn negative_control() -> Check {
    let mut check = Check::new("long-loop cycle gadget is not C_r-semi-saturated");
    for r in 5..=7 {
        let loop_len = r - 2;
        let outcome = cons::cycle_gadget_with_loops(r, loop_len, 2)
            .map_err(|e| e.to_string())
            .and_then(|g| is_semi_saturated(&g, &Graph::cycle(r)).map_err(|e| e.to_string()));
        let ok = match &outcome {
            Ok(report) => match report.certificate {
                Certificate::ViolatingNonEdge { edge } => {
                    !report.verdict && edge.u >= r && edge.v >= r && edge.v - edge.u == loop_len
                }
                _ => false,
            },
            Err(_) => false,
        };
        check.record(ok, || format!("r = {r}: {outcome:?}"));
    }
    check
}

/// Exhaustive `sat(n, K_r)` against the closed form, and `dsat(n, K_r)`
/// against the `D(n,r)` edge count as an upper bound.
pub fn formulas(max_n: usize) -> Vec<Check> {
    let mut sat = Check::new("sat(n, K_r) = (r-2)n - C(r-1,2)");
    let mut dsat = Check::new("dsat(n, K_r) <= |E(D(n,r))|");
    let opts = SearchOptions::default();
    for r in [3, 4] {
        for n in r..=max_n {
            let k = Graph::complete(r);
            let got = search::min_edges(&k, n, PredicateKind::Saturated, &opts).map(|s| s.min_edges as u64);
            let want = sat_clique(n, r).ok();
            sat.record(got.as_ref().ok() == want.as_ref(), || {
                format!("n = {n}, r = {r}: search {got:?}, formula {want:?}")
            });
            if n <= 7 {
                let got = search::min_edges(&k, n, PredicateKind::DomSat, &opts).map(|s| s.min_edges as u64);
                let upper = dsat_clique_upper_edges(n, r).ok();
                let ok = matches!((&got, upper), (Ok(m), Some(u)) if *m <= u);
                dsat.record(ok, || format!("n = {n}, r = {r}: search {got:?}, D(n,r) {upper:?}"));
            }
        }
    }
    vec![sat, dsat]
}
