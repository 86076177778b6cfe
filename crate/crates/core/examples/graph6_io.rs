//! Read graph6 from argv (or use a default), print size, degrees and the
//! canonical form.
//!
//!     cargo run --example graph6_io -- 'D?{' 'Bw'

use domsat::canon::{automorphism_count, canonical_form};
use domsat::graph6;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec!["IheA@GUAo".to_string()]
    } else {
        args
    };
    for text in inputs {
        let g = match graph6::decode(&text) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("{text}: {e}");
                continue;
            }
        };
        let degrees: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
        println!("{text}");
        println!("  n = {}, m = {}, degrees {degrees:?}", g.order(), g.size());
        println!("  connected {}, bridges {}", g.is_connected(), g.bridges().len());
        println!(
            "  canonical {}, |Aut| = {}",
            graph6::encode(&canonical_form(&g)),
            automorphism_count(&g)
        );
    }
}
