//! Exact dsat values by exhaustive search, with an optional cache path.
//!
//!     cargo run --release --example search -- /tmp/dsat.jsonl

use domsat::predicates::PredicateKind;
use domsat::search::{density_profile, ResultCache, SearchOptions};
use domsat::Graph;

fn main() {
    let mut cache = std::env::args()
        .nth(1)
        .map(|p| ResultCache::open(p).expect("cache opens"));
    let options = SearchOptions::default();
    for (name, f) in [
        ("K3", Graph::complete(3)),
        ("P3", Graph::path(3)),
        ("C4", Graph::cycle(4)),
    ] {
        let profile = density_profile(&f, 8, PredicateKind::DomSat, &options, cache.as_mut()).unwrap();
        println!("dsat(n, {name})");
        for row in &profile.rows {
            println!("  n = {}  m = {:>2}  m/n = {}", row.n, row.min_edges, row.density);
        }
        if !profile.non_decreasing() {
            println!("  density drops at {:?}", profile.decreases());
        }
    }
}
