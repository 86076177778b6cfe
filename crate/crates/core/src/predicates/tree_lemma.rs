//! Witnesses for small trees: a star, or a non-adjacent pair `u, v` such
//! that `T - u - v` has no `j`-vertex path starting in `N(u) ∪ N(v)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bits, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeWitness {
    Star,
    Pair { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("input graph is not a tree")]
    NotATree,
    #[error("tree order {t} is outside 3 <= t < 3j for j = {j}")]
    OutOfRange { t: usize, j: usize },
    #[error("no witness pair exists (counterexample)")]
    NoWitness,
}

fn check_input(t: &Graph, j: usize) -> Result<(), LemmaError> {
    if !t.is_tree() {
        return Err(LemmaError::NotATree);
    }
    let n = t.order();
    if n < 3 || n >= 3 * j {
        return Err(LemmaError::OutOfRange { t: n, j });
    }
    Ok(())
}

fn is_star(t: &Graph) -> bool {
    t.max_degree() + 1 == t.order()
}

/// Vertices on a longest path starting at `s` inside `within` (a forest).
fn longest_from(t: &Graph, s: usize, within: u64) -> usize {
    fn dfs(t: &Graph, x: usize, from: usize, within: u64) -> usize {
        1 + Bits(t.row(x) & within)
            .filter(|&y| y != from)
            .map(|y| dfs(t, y, x, within))
            .max()
            .unwrap_or(0)
    }
    dfs(t, s, usize::MAX, within)
}

fn has_path_from(t: &Graph, starts: u64, within: u64, j: usize) -> bool {
    Bits(starts & within).any(|s| longest_from(t, s, within) >= j)
}

/// Checks the pair condition by exhaustive path search in `t - u - v`.
pub fn is_valid_lemma_pair(t: &Graph, j: usize, u: usize, v: usize) -> bool {
    let n = t.order();
    if u >= n || v >= n || u == v || t.has_edge(u, v) {
        return false;
    }
    let within = t.vertices().0 & !(1 << u) & !(1 << v);
    !has_path_from(t, t.row(u) | t.row(v), within, j)
}

/// Brute force over non-adjacent pairs in lexicographic order; the first
/// valid pair is returned.
pub fn lemma_tree_witness(t: &Graph, j: usize) -> Result<TreeWitness, LemmaError> {
    check_input(t, j)?;
    if is_star(t) {
        return Ok(TreeWitness::Star);
    }
    t.non_edges()
        .find(|e| is_valid_lemma_pair(t, j, e.u, e.v))
        .map(|e| TreeWitness::Pair { u: e.u, v: e.v })
        .ok_or(LemmaError::NoWitness)
}

/// The orientation argument: pick `u, v` directly from the structure of
/// long paths. Returns `Ok(None)` if the pair it produces does not verify.
pub fn lemma_tree_witness_by_cases(t: &Graph, j: usize) -> Result<Option<TreeWitness>, LemmaError> {
    check_input(t, j)?;
    if is_star(t) {
        return Ok(Some(TreeWitness::Star));
    }
    let pair = by_cases(t, j);
    Ok(pair
        .filter(|&(u, v)| is_valid_lemma_pair(t, j, u, v))
        .map(|(u, v)| TreeWitness::Pair {
            u: u.min(v),
            v: u.max(v),
        }))
}

fn by_cases(t: &Graph, j: usize) -> Option<(usize, usize)> {
    let all = t.vertices().0;
    let has_path = |within: u64| has_path_from(t, within, within, j);

    // some vertex meets every j-vertex path
    for u in 0..t.order() {
        if !has_path(all & !(1 << u)) {
            let v = Bits(all & !t.row(u) & !(1 << u)).next()?;
            return Some((u, v));
        }
    }

    // edges with a long path on both sides form a path U from u to w
    let side = |a: usize, b: usize| t.reach(a, VertexSet(all & !(1 << b))).0;
    let unoriented: Vec<(usize, usize)> = t
        .edges()
        .filter(|e| has_path(side(e.u, e.v)) && has_path(side(e.v, e.u)))
        .map(|e| (e.u, e.v))
        .collect();
    let mut deg = vec![0usize; t.order()];
    for &(a, b) in &unoriented {
        deg[a] += 1;
        deg[b] += 1;
    }
    let ends: Vec<usize> = (0..t.order()).filter(|&x| deg[x] == 1).collect();
    let &[u, w] = ends.as_slice() else {
        return None;
    };
    if !t.has_edge(u, w) {
        return Some((u, w));
    }

    // U is the single edge uw; work in the smaller side W containing w
    let (u, w) = if side(w, u).count_ones() <= side(u, w).count_ones() {
        (u, w)
    } else {
        (w, u)
    };
    let big_w = side(w, u);
    let inner = t.row(w) & big_w;
    let via = Bits(inner).find(|&v| longest_from(t, v, big_w & !(1 << w)) + 1 >= j);
    match via {
        Some(v) => Some((u, v)),
        None => Bits(inner).next().map(|v| (u, v)),
    }
}
