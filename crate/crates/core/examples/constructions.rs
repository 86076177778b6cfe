//! Builds one member of each extremal family and certifies it.

use domsat::constructions::FamilySpec;
use domsat::graph6;
use domsat::Graph;

fn main() {
    let specs = [
        FamilySpec::DomTuran { n: 10, r: 4 },
        FamilySpec::Turan { n: 9, r: 3 },
        FamilySpec::Path { n: 12, r: 5 },
        FamilySpec::CycleGadget { n: 10, r: 6 },
        FamilySpec::CycleGadgetLoops {
            r: 6,
            clique: 6,
            loop_len: 4,
            loops: 2,
        },
        FamilySpec::Star { n: 14, r: 4 },
        FamilySpec::StarPlus { n: 16, s: 5 },
        FamilySpec::Bridge {
            pattern: Graph::path(4),
            n: 16,
        },
        FamilySpec::Neighborhood {
            pattern: Graph::star(3),
            n: 12,
        },
    ];
    for spec in specs {
        let g = match spec.build(true) {
            Ok(g) => g,
            Err(e) => {
                println!("{spec}: {e}");
                continue;
            }
        };
        let verdict = match spec.certify(&g) {
            Some(r) if r.verdict => "certified".to_string(),
            Some(r) => format!("rejected {}", serde_json::to_string(&r.certificate).unwrap()),
            None => "no claim".to_string(),
        };
        println!("{spec}: n = {}, m = {}, {verdict}", g.order(), g.size());
        println!("  {}", graph6::encode(&g));
    }
}
