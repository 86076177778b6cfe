//! Structural density bounds for the pattern pool, then the closed-form
//! densities of the known families.

use domsat::bounds::{known_density, structural_bounds, KnownFamily};
use domsat::verify::pattern_pool;

fn main() {
    for (name, f) in pattern_pool() {
        let set = structural_bounds(&f);
        let show = |d: Option<domsat::bounds::Density>| d.map_or("-".to_string(), |d| d.to_string());
        println!("{name}: lower {} upper {}", show(set.best_lower), show(set.best_upper));
        for b in set.lower.iter().chain(&set.upper) {
            println!("    {:?} {} ({})", b.source, b.value, b.detail);
        }
        for w in &set.warnings {
            println!("    warning: {w}");
        }
    }
    for family in [
        KnownFamily::Clique,
        KnownFamily::Path,
        KnownFamily::Cycle,
        KnownFamily::Star,
    ] {
        for r in 4..=6 {
            match known_density(family, r) {
                Ok(d) => println!("{family:?} r={r}: {d}"),
                Err(e) => println!("{family:?} r={r}: {e}"),
            }
        }
    }
}
