//! Every predicate for a few host/pattern pairs, with certificates.

use domsat::predicates::{evaluate, PredicateKind};
use domsat::{Edge, Graph};

fn main() {
    let k3 = Graph::complete(3);
    let hosts = [
        ("K4", Graph::complete(4)),
        ("K4-e", Graph::complete(4).without_edge(Edge::new(2, 3).unwrap())),
        ("C4", Graph::cycle(4)),
        ("K1,4", Graph::star(4)),
    ];
    for (name, g) in &hosts {
        println!("{name} against K3");
        for kind in PredicateKind::ALL {
            let report = evaluate(kind, g, &k3).unwrap();
            let cert = serde_json::to_string(&report.certificate).unwrap();
            println!("  {:<17} {:<5} {cert}", kind.as_str(), report.verdict);
        }
    }
}
