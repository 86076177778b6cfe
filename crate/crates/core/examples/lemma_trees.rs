//! Tree witnesses for the path lemma: every tree with t < 3j vertices is a
//! star or has a non-adjacent pair u, v such that T-u-v has no j-vertex
//! path ending in N(u) or N(v).

use domsat::graph6;
use domsat::predicates::{lemma_tree_witness, lemma_tree_witness_by_cases, TreeWitness};
use domsat::search::{enumerate, verify_lemma_suite};

fn main() {
    for t in 3..6 {
        for tree in enumerate::trees(t).unwrap() {
            let w = lemma_tree_witness(&tree, 2).unwrap();
            let fast = lemma_tree_witness_by_cases(&tree, 2).unwrap();
            let shown = match w {
                TreeWitness::Star => "star".to_string(),
                TreeWitness::Pair { u, v } => format!("pair ({u},{v})"),
            };
            println!(
                "{:<8} j=2 {shown:<12} case analysis agrees: {}",
                graph6::encode(&tree),
                fast.is_some()
            );
        }
    }
    for j in 2..=3 {
        let report = verify_lemma_suite(j).unwrap();
        println!(
            "j = {j}: {} trees, {} stars, {} pairs ({} by cases), {} failures",
            report.trees,
            report.stars,
            report.pairs,
            report.by_cases,
            report.failures.len()
        );
    }
}
