mod common;

use common::Lg;
use domsat::canon::{automorphism_count, canonical_form};
use domsat::connectivity::is_k_connected;
use domsat::iso::{copy_through_edge, count_copies, embedding_exists};
use domsat::predicates::{evaluate, is_semi_saturated, Certificate, PredicateKind};
use domsat::{graph6, Edge, Graph};
use proptest::prelude::*;

fn lg(max_n: usize) -> impl Strategy<Value = Lg> {
    (1..=max_n).prop_flat_map(|n| {
        let bits = common::pairs(n);
        any::<u64>().prop_map(move |m| Lg {
            n,
            mask: if bits == 0 { 0 } else { m & ((1u64 << bits) - 1) },
        })
    })
}

/// Graphs on up to 64 vertices at a random edge density.
fn big_graph() -> impl Strategy<Value = Graph> {
    (1usize..=64, 0.0f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    lg(max_n).prop_flat_map(|g| (Just(g.to_graph()), permutation(g.n)))
}

/// Isolate-free patterns used against the oracle.
fn pattern_pool() -> Vec<Graph> {
    vec![
        Graph::complete(2),
        Graph::path(3),
        Graph::complete(3),
        Graph::path(4),
        Graph::star(3),
        Graph::cycle(4),
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
    ]
}

fn pattern() -> impl Strategy<Value = Graph> {
    prop::sample::select(pattern_pool())
}

fn predicate() -> impl Strategy<Value = PredicateKind> {
    prop::sample::select(PredicateKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in big_graph()) {
        let text = graph6::encode(&g);
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(graph6::decode(&text).unwrap(), g);
    }

    #[test]
    fn join_edge_count(a in lg(6), b in lg(6)) {
        let (g, h) = (a.to_graph(), b.to_graph());
        let j = g.join(&h).unwrap();
        prop_assert_eq!(j.size(), g.size() + h.size() + g.order() * h.order());
    }

    #[test]
    fn canonical_form_ignores_labels((g, p) in graph_and_perm(8)) {
        let h = g.permuted(&p);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(automorphism_count(&g), automorphism_count(&h));
    }

    #[test]
    fn canonical_form_is_isomorphic(g in lg(6)) {
        let canon = common::NaiveCanon::new(g.n);
        let c = Lg::from_graph(&canonical_form(&g.to_graph()));
        prop_assert_eq!(canon.canon(c), canon.canon(g));
    }

    #[test]
    fn embedding_matches_naive(f in lg(5), g in lg(7)) {
        let (fg, gg) = (f.to_graph(), g.to_graph());
        let found = embedding_exists(&fg, &gg);
        prop_assert_eq!(found.is_some(), common::embeds(&f, &g));
        if let Some(e) = found {
            prop_assert!(e.is_valid(&fg, &gg));
        }
    }

    #[test]
    fn copy_count_matches_naive(f in pattern(), g in lg(7)) {
        let naive = common::copies(&Lg::from_graph(&f), &g).len() as u128;
        prop_assert_eq!(count_copies(&f, &g.to_graph()).copies, naive);
    }

    #[test]
    fn copy_count_ignores_host_labels(f in pattern(), (g, p) in graph_and_perm(7)) {
        prop_assert_eq!(count_copies(&f, &g), count_copies(&f, &g.permuted(&p)));
    }

    #[test]
    fn new_copies_are_copies_through_the_edge(f in pattern(), g in lg(7)) {
        let host = g.to_graph();
        let before = count_copies(&f, &host).copies;
        for e in host.non_edges() {
            let plus = host.with_edge(e);
            let gained = count_copies(&f, &plus).copies > before;
            let through = copy_through_edge(&f, &plus, e).unwrap();
            prop_assert_eq!(gained, through.is_some());
            if let Some(emb) = through {
                prop_assert!(emb.is_valid(&f, &plus) && emb.uses_edge(&f, e));
            }
        }
    }

    #[test]
    fn predicates_match_naive(f in pattern(), g in lg(6), kind in predicate()) {
        prop_assume!(kind != PredicateKind::WeaklySaturated || g.n <= 5);
        let got = evaluate(kind, &g.to_graph(), &f).unwrap().verdict;
        let want = common::naive_predicate(kind.as_str())(&g, &Lg::from_graph(&f));
        prop_assert_eq!(got, want, "{} on {:?}", kind, g);
    }

    #[test]
    fn certificates_replay(f in pattern(), g in lg(7), kind in predicate()) {
        let host = g.to_graph();
        let report = evaluate(kind, &host, &f).unwrap();
        prop_assert!(report.replay(&host, &f));
    }

    #[test]
    fn semi_saturation_certificate_adds_no_copy(f in pattern(), g in lg(7)) {
        let host = g.to_graph();
        let report = is_semi_saturated(&host, &f).unwrap();
        if let Certificate::ViolatingNonEdge { edge } = report.certificate {
            prop_assert!(!report.verdict);
            let fl = Lg::from_graph(&f);
            let before = common::copies(&fl, &g).len();
            prop_assert_eq!(common::copies(&fl, &g.plus((edge.u, edge.v))).len(), before);
        } else {
            prop_assert!(report.verdict);
        }
    }

    #[test]
    fn forged_certificates_are_rejected(f in pattern(), g in lg(6)) {
        let host = g.to_graph();
        let report = evaluate(PredicateKind::Dominated, &host, &f).unwrap();
        for e in host.edges() {
            let covered = copy_through_edge(&f, &host, e).unwrap().is_some();
            let mut forged = report.clone();
            forged.verdict = false;
            forged.certificate = Certificate::UncoveredEdge { edge: e };
            prop_assert_eq!(forged.replay(&host, &f), !covered);
        }
    }

    #[test]
    fn one_connected_means_connected(g in lg(8)) {
        let h = g.to_graph();
        prop_assert_eq!(is_k_connected(&h, 1), h.is_connected() && h.order() >= 2);
    }

    #[test]
    fn bridges_disconnect_their_endpoints(g in lg(8)) {
        let h = g.to_graph();
        for b in h.bridges() {
            let cut = h.without_edge(b);
            let all = h.vertices();
            prop_assert!(!cut.reach(b.u, all).contains(b.v));
        }
        for e in h.edges() {
            if !h.bridges().contains(&e) {
                prop_assert!(h.without_edge(e).reach(e.u, h.vertices()).contains(e.v));
            }
        }
    }
}

#[test]
fn edge_normalizes_its_endpoints() {
    assert_eq!(Edge::new(3, 1).unwrap(), Edge::new(1, 3).unwrap());
    assert!(Edge::new(2, 2).is_err());
}
