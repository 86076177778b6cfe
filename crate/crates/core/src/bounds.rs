//! Closed-form values and structural density bounds, as exact rationals.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::canon::canonical_form;
use crate::constructions::{self, best_bridge, neighborhood_edge, star_plus_pair};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::predicates;

/// Exact edge density. Serialized as `{"num": .., "den": ..}` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Density(pub Ratio<i64>);

impl Density {
    pub fn new(num: i64, den: i64) -> Density {
        Density(Ratio::new(num, den))
    }

    pub fn integer(v: i64) -> Density {
        Density(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DensityJson {
    num: i64,
    den: i64,
}

impl Serialize for Density {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DensityJson {
            num: self.numer(),
            den: self.denom(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Density {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = DensityJson::deserialize(d)?;
        if raw.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Density::new(raw.num, raw.den))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("{what}: parameters out of range ({detail})")]
    Range { what: &'static str, detail: String },
    #[error("unknown family {0:?}; expected one of clique, path, cycle, star, star_plus, kt_path_sat")]
    UnknownFamily(String),
}

fn range(what: &'static str, detail: String) -> BoundsError {
    BoundsError::Range { what, detail }
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// `sat(n, K_r) = (r-2)n - C(r-1, 2)`.
pub fn sat_clique(n: usize, r: usize) -> Result<u64, BoundsError> {
    if r < 3 || n < r {
        return Err(range("sat_clique", format!("need n >= r >= 3, got n = {n}, r = {r}")));
    }
    let (n, r) = (n as u64, r as u64);
    Ok((r - 2) * n - choose2(r - 1))
}

/// `dsat(K_r) = r - 3/2`.
pub fn dsat_clique_density(r: usize) -> Result<Density, BoundsError> {
    if r < 3 {
        return Err(range("dsat_clique_density", format!("need r >= 3, got {r}")));
    }
    Ok(Density::new(2 * r as i64 - 3, 2))
}

/// Edge count of `D(n, r)`:
/// `C(r-2,2) + (r-2)(n-r+2) + ceil((n-r+2)/2) + (n-r) mod 2`.
pub fn dsat_clique_upper_edges(n: usize, r: usize) -> Result<u64, BoundsError> {
    if r < 3 || n < r {
        return Err(range(
            "dsat_clique_upper_edges",
            format!("need n >= r >= 3, got n = {n}, r = {r}"),
        ));
    }
    let (n, r) = (n as u64, r as u64);
    let rest = n - r + 2;
    Ok(choose2(r - 2) + (r - 2) * rest + rest.div_ceil(2) + (n - r) % 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnownFamily {
    Clique,
    Path,
    Cycle,
    Star,
    StarPlus,
    KtPathSat,
}

impl FromStr for KnownFamily {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.replace('-', "_").as_str() {
            "clique" => KnownFamily::Clique,
            "path" => KnownFamily::Path,
            "cycle" => KnownFamily::Cycle,
            "star" => KnownFamily::Star,
            "star_plus" => KnownFamily::StarPlus,
            "kt_path_sat" => KnownFamily::KtPathSat,
            _ => return Err(BoundsError::UnknownFamily(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KnownDensity {
    Exact { value: Density },
    Interval { lower: Density, upper: Density },
}

impl KnownDensity {
    pub fn lower(&self) -> Density {
        match *self {
            KnownDensity::Exact { value } => value,
            KnownDensity::Interval { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> Density {
        match *self {
            KnownDensity::Exact { value } => value,
            KnownDensity::Interval { upper, .. } => upper,
        }
    }
}

impl fmt::Display for KnownDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnownDensity::Exact { value } => write!(f, "{value}"),
            KnownDensity::Interval { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

/// `1 - 1/3j` for `r = 2j+1`, `1 - 1/(3j+1)` for `r = 2j+2`.
fn path_density(r: usize) -> Density {
    let c = constructions::path_component(r) as i64;
    Density::new(c - 1, c)
}

/// `r(r-1)/(2r-1)`, the density of `K_{r-1,r}`.
pub fn star_construction_density(r: usize) -> Density {
    let r = r as i64;
    Density::new(r * (r - 1), 2 * r - 1)
}

/// `(r-1)/2 + (4r-3)/(8r-4)`.
pub fn star_stated_upper(r: usize) -> Density {
    let r = r as i64;
    Density(Ratio::new(r - 1, 2) + Ratio::new(4 * r - 3, 8 * r - 4))
}

/// Known density of a family member, parameterized by its order `r`
/// (`K_r`, `P_r`, `C_r`, the star `K_{1,r}`, the star-plus graph `G_r`).
/// `kt_path_sat` gives the saturation density of `P_r`.
pub fn known_density(family: KnownFamily, r: usize) -> Result<KnownDensity, BoundsError> {
    let bad = |need: &str| Err(range("known_density", format!("{family:?} needs {need}, got {r}")));
    let exact = |value| Ok(KnownDensity::Exact { value });
    match family {
        KnownFamily::Clique => dsat_clique_density(r).map(|value| KnownDensity::Exact { value }),
        KnownFamily::Path if r >= 3 => exact(path_density(r)),
        KnownFamily::Cycle if r >= 4 => Ok(KnownDensity::Interval {
            lower: Density::integer(1),
            upper: Density::new(r as i64 - 2, r as i64 - 3),
        }),
        KnownFamily::Star if r >= 2 => Ok(KnownDensity::Interval {
            lower: Density::new(r as i64 - 1, 2),
            upper: star_stated_upper(r),
        }),
        KnownFamily::StarPlus if r >= 4 => Ok(KnownDensity::Interval {
            lower: Density::new(r as i64 - 1, r as i64),
            upper: Density::new(2 * r as i64 - 3, 2 * r as i64 - 2),
        }),
        KnownFamily::KtPathSat if (3..=60).contains(&r) => {
            let j = (r - 1) / 2;
            let base: i64 = if r % 2 == 1 { 2 } else { 3 };
            let den = base * (1i64 << j) - 2;
            exact(Density::new(den - 1, den))
        }
        KnownFamily::Path | KnownFamily::KtPathSat => bad("3 <= r"),
        KnownFamily::Cycle => bad("r >= 4"),
        KnownFamily::Star => bad("r >= 2"),
        KnownFamily::StarPlus => bad("s >= 4"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// `δ(F)/2` when every component has at least two edges.
    MinDegree,
    /// `|F| - 3/2`, via domination by a clique.
    CliqueCorollary,
    /// `(|F| - 1)/2` from clique blocks.
    Bridge,
    /// `(r(r-1)+1)/2r` from pairs of `K_r`.
    BridgePaired,
    /// `k` or `k + 1/2` from an edge with `|N(u) ∪ N(w)| = k+2`.
    Neighborhood,
    /// `k + (r-1)/2` from disjoint `U, W` with one edge between them.
    SplitPair,
    Clique,
    Path,
    Cycle,
    Star,
    /// Star upper bound as stated.
    StarStated,
    /// Star upper bound from the `K_{r-1,r}` blocks.
    StarConstruction,
    StarPlus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: Density,
    pub source: BoundSource,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSet {
    pub pattern: String,
    pub lower: Vec<Bound>,
    pub upper: Vec<Bound>,
    pub best_lower: Option<Density>,
    pub best_upper: Option<Density>,
    pub warnings: Vec<String>,
}

impl BoundSet {
    pub fn consistent(&self) -> bool {
        match (self.best_lower, self.best_upper) {
            (Some(lo), Some(hi)) => lo <= hi,
            _ => true,
        }
    }

    pub fn upper_from(&self, source: BoundSource) -> Option<Density> {
        self.upper.iter().find(|b| b.source == source).map(|b| b.value)
    }

    pub fn lower_from(&self, source: BoundSource) -> Option<Density> {
        self.lower.iter().find(|b| b.source == source).map(|b| b.value)
    }
}

/// Largest pattern order for the `U, W` subset scan.
pub const SPLIT_SCAN_MAX_ORDER: usize = 16;
/// Largest `|U ∪ W|` considered.
pub const SPLIT_SCAN_MAX_SET: usize = 6;

/// Minimal `k + (r-1)/2` over disjoint `U, W` with exactly one edge
/// between them and `|U ∪ W| = r <= 6`; returns the bound and `(U, W)`.
pub fn split_pair_bound(f: &Graph) -> Option<(Density, VertexSet, VertexSet)> {
    let n = f.order();
    if n > SPLIT_SCAN_MAX_ORDER {
        return None;
    }
    let mut best: Option<(Density, VertexSet, VertexSet)> = None;
    let mut members = Vec::with_capacity(SPLIT_SCAN_MAX_SET);
    fn subsets(f: &Graph, start: usize, members: &mut Vec<usize>, best: &mut Option<(Density, VertexSet, VertexSet)>) {
        if members.len() >= 2 {
            consider(f, members, best);
        }
        if members.len() == SPLIT_SCAN_MAX_SET {
            return;
        }
        for v in start..f.order() {
            members.push(v);
            subsets(f, v + 1, members, best);
            members.pop();
        }
    }
    fn consider(f: &Graph, members: &[usize], best: &mut Option<(Density, VertexSet, VertexSet)>) {
        let s: VertexSet = members.iter().copied().collect();
        let r = members.len() as i64;
        let outside = s
            .iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(f.neighbors(v)))
            .difference(s);
        let k = outside.len() as i64;
        let value = Density(Ratio::from_integer(k) + Ratio::new(r - 1, 2));
        if best.as_ref().is_some_and(|b| b.0 <= value) {
            return;
        }
        // first member always in U so each split is seen once
        for mask in 0..1u32 << (members.len() - 1) {
            let mut u = VertexSet::singleton(members[0]);
            let mut w = VertexSet::EMPTY;
            for (i, &v) in members[1..].iter().enumerate() {
                if mask >> i & 1 == 1 {
                    u.insert(v);
                } else {
                    w.insert(v);
                }
            }
            if w.is_empty() {
                continue;
            }
            let cross: usize = u.iter().map(|x| f.neighbors(x).intersection(w).len()).sum();
            if cross == 1 {
                *best = Some((value, u, w));
                return;
            }
        }
    }
    subsets(f, 0, &mut members, &mut best);
    best
}

fn set_str(s: VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Recognizes `K_r`, `P_r`, `C_r`, `K_{1,r}` and `G_s` up to isomorphism.
fn recognize(f: &Graph) -> Vec<(KnownFamily, usize)> {
    let n = f.order();
    let canon = canonical_form(f);
    let same = |g: &Graph| canonical_form(g) == canon;
    let mut found = Vec::new();
    if n >= 3 && f.is_complete() {
        found.push((KnownFamily::Clique, n));
    }
    if n >= 3 && same(&Graph::path(n)) {
        found.push((KnownFamily::Path, n));
    }
    if n >= 4 && same(&Graph::cycle(n)) {
        found.push((KnownFamily::Cycle, n));
    }
    if n >= 3 && same(&Graph::star(n - 1)) {
        found.push((KnownFamily::Star, n - 1));
    }
    if n >= 4 && star_plus_pair(n).is_ok_and(|(g, _)| same(&g)) {
        found.push((KnownFamily::StarPlus, n));
    }
    found
}

/// Every applicable density bound for `f`.
pub fn structural_bounds(f: &Graph) -> BoundSet {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut warnings = Vec::new();
    let n = f.order() as i64;
    let bound = |value, source, detail: String| Bound { value, source, detail };

    if f.size() == 0 {
        warnings.push("pattern has no edges; no bounds apply".to_string());
        return BoundSet {
            pattern: graph6::encode(f),
            lower,
            upper,
            best_lower: None,
            best_upper: None,
            warnings,
        };
    }

    let components = f.components();
    let edges_in = |c: VertexSet| c.iter().map(|v| f.neighbors(v).intersection(c).len()).sum::<usize>() / 2;
    if components.iter().all(|&c| edges_in(c) >= 2) {
        lower.push(bound(
            Density::new(f.min_degree() as i64, 2),
            BoundSource::MinDegree,
            format!("delta(F) = {}", f.min_degree()),
        ));
    }

    upper.push(bound(
        Density::new(2 * n - 3, 2),
        BoundSource::CliqueCorollary,
        format!("|F| = {n}"),
    ));

    if let Some((b, r)) = best_bridge(f) {
        upper.push(bound(
            Density::new(n - 1, 2),
            BoundSource::Bridge,
            format!("bridge {b}"),
        ));
        let r64 = r as i64;
        upper.push(bound(
            Density::new(r64 * (r64 - 1) + 1, 2 * r64),
            BoundSource::BridgePaired,
            format!("bridge {b} leaves components of at most {r} vertices"),
        ));
        let probe = (4 * r).max(f.order()).min(crate::graph::MAX_VERTICES);
        if let Ok(paired) = constructions::bridge_pair_family(f, probe) {
            if let Ok(report) = predicates::is_dom_sat(&paired, f) {
                if !report.verdict {
                    warnings.push(format!(
                        "paired K_{r} blocks on {probe} vertices are not F-dom-sat ({:?}); the paired bridge bound is not backed by that construction here",
                        report.certificate
                    ));
                }
            }
        }
    }

    if let Some(choice) = neighborhood_edge(f) {
        let k = choice.k as i64;
        let matched = f.min_degree() as i64 == k + 1;
        let value = if matched {
            Density::new(2 * k + 1, 2)
        } else {
            Density::integer(k)
        };
        upper.push(bound(
            value,
            BoundSource::Neighborhood,
            format!(
                "edge {} with k = {k}{}",
                choice.edge,
                if matched { ", delta(F) = k+1" } else { "" }
            ),
        ));
    }

    match split_pair_bound(f) {
        Some((value, u, w)) => upper.push(bound(
            value,
            BoundSource::SplitPair,
            format!("U = {}, W = {}", set_str(u), set_str(w)),
        )),
        None if f.order() > SPLIT_SCAN_MAX_ORDER => warnings.push(format!(
            "U/W subset scan skipped for patterns above {SPLIT_SCAN_MAX_ORDER} vertices"
        )),
        None => {}
    }

    for (family, r) in recognize(f) {
        let known = known_density(family, r).expect("recognized parameters are in range");
        let (lo_src, hi_src) = match family {
            KnownFamily::Clique => (BoundSource::Clique, BoundSource::Clique),
            KnownFamily::Path => (BoundSource::Path, BoundSource::Path),
            KnownFamily::Cycle => (BoundSource::Cycle, BoundSource::Cycle),
            KnownFamily::Star => (BoundSource::Star, BoundSource::StarStated),
            KnownFamily::StarPlus => (BoundSource::StarPlus, BoundSource::StarPlus),
            KnownFamily::KtPathSat => unreachable!("not recognized from a pattern"),
        };
        let detail = format!("{family:?} with parameter {r}");
        lower.push(bound(known.lower(), lo_src, detail.clone()));
        upper.push(bound(known.upper(), hi_src, detail.clone()));
        if family == KnownFamily::Star {
            let built = star_construction_density(r);
            upper.push(bound(built, BoundSource::StarConstruction, detail));
            if built != known.upper() {
                warnings.push(format!(
                    "star K_1,{r}: stated upper bound {} differs from the K_{},{} block density {built}",
                    known.upper(),
                    r - 1,
                    r
                ));
            }
        }
    }

    let best_lower = lower.iter().map(|b| b.value).max();
    let best_upper = upper.iter().map(|b| b.value).min();
    if let (Some(lo), Some(hi)) = (best_lower, best_upper) {
        if lo > hi {
            warnings.push(format!("best lower bound {lo} exceeds best upper bound {hi}"));
        }
    }
    BoundSet {
        pattern: graph6::encode(f),
        lower,
        upper,
        best_lower,
        best_upper,
        warnings,
    }
}
