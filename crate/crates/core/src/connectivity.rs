//! Vertex and edge connectivity tests.
//!
//! `K_n` counts as `(n-1)`-connected and no more. Vertex connectivity uses
//! exhaustive cut enumeration up to [`BRUTE_FORCE_LIMIT`] vertices and unit
//! capacity max-flow above it; the two are cross-checked in tests.

use std::collections::VecDeque;

use crate::graph::{Bits, Graph, VertexSet};

pub const BRUTE_FORCE_LIMIT: usize = 16;

/// True iff `g` has more than `k` vertices and no vertex cut of size `< k`.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.order() <= k {
        return false;
    }
    if k == 0 {
        return true;
    }
    if g.order() <= BRUTE_FORCE_LIMIT {
        k_connected_by_cuts(g, k)
    } else {
        k_connected_by_flow(g, k)
    }
}

/// True iff removing fewer than `k` edges never disconnects `g`.
/// A single vertex is treated as 0-edge-connected.
pub fn is_k_edge_connected(g: &Graph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    if g.order() < 2 || !g.is_connected() {
        return false;
    }
    // A global minimum edge cut separates vertex 0 from some t.
    (1..g.order()).all(|t| edge_disjoint_paths(g, 0, t, k) >= k)
}

pub(crate) fn k_connected_by_cuts(g: &Graph, k: usize) -> bool {
    let n = g.order();
    debug_assert!(n > k);
    let all = g.vertices();
    let mut removed = Vec::with_capacity(k);
    fn rec(g: &Graph, all: VertexSet, start: usize, left: usize, removed: &mut Vec<usize>) -> bool {
        let rest = removed.iter().fold(all, |s, &v| s.difference(VertexSet::singleton(v)));
        let first = rest.first().expect("more vertices than cut size");
        if g.reach(first, rest) != rest {
            return false;
        }
        if left == 0 {
            return true;
        }
        for v in start..g.order() {
            removed.push(v);
            let ok = rec(g, all, v + 1, left - 1, removed);
            removed.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(g, all, 0, k - 1, &mut removed)
}

pub(crate) fn k_connected_by_flow(g: &Graph, k: usize) -> bool {
    let n = g.order();
    debug_assert!(n > k);
    for s in 0..n {
        for t in Bits(!g.row(s) & VertexSet::full(n).0 & !((1u64 << (s + 1)) - 1)) {
            if vertex_disjoint_paths(g, s, t, k) < k {
                return false;
            }
        }
    }
    true
}

/// Residual graph for unit-capacity max-flow on a small directed network.
struct FlowNet {
    cap: Vec<Vec<u8>>,
}

impl FlowNet {
    fn new(size: usize) -> Self {
        FlowNet {
            cap: vec![vec![0; size]; size],
        }
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let size = self.cap.len();
        let mut prev = vec![usize::MAX; size];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for y in 0..size {
                if self.cap[x][y] > 0 && prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[t] == usize::MAX {
            return false;
        }
        let mut y = t;
        while y != s {
            let x = prev[y];
            self.cap[x][y] -= 1;
            self.cap[y][x] += 1;
            y = x;
        }
        true
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment(s, t) {
            flow += 1;
        }
        flow
    }
}

/// Internally vertex-disjoint `s`-`t` paths for non-adjacent `s, t`, capped at `limit`.
fn vertex_disjoint_paths(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.order();
    // vertex v splits into v_in = 2v and v_out = 2v+1
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        net.cap[2 * v][2 * v + 1] = if v == s || v == t { u8::MAX / 2 } else { 1 };
    }
    for e in g.edges() {
        net.cap[2 * e.u + 1][2 * e.v] = 1;
        net.cap[2 * e.v + 1][2 * e.u] = 1;
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

fn edge_disjoint_paths(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    let mut net = FlowNet::new(g.order());
    for e in g.edges() {
        net.cap[e.u][e.v] = 1;
        net.cap[e.v][e.u] = 1;
    }
    net.max_flow(s, t, limit)
}
