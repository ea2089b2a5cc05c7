//! Build the five diagram foldings, print their fixed lattices and folded
//! diagrams.
//!
//! Usage: `cargo run --example foldings`

use enriques_cusps::folding::{build_five_foldings, fold_diagram};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (f, d) in build_five_foldings()? {
        let fixed = f.fixed_lattice(&d.lattice)?.lattice.two_elementary_invariants()?;
        let folded = fold_diagram(&d, &f)?;
        println!("cusp {}: chart {}, fixed lattice {fixed} (expected {}), {} folded roots", f.cusp, f.chart, f.expected_invariants(), folded.diagram.len());
        for (i, orbit) in folded.origin.iter().enumerate() {
            let labels: Vec<usize> = orbit.iter().map(|&v| d.labels[v]).collect();
            println!("  β{i:<2} norm {:>2} from {labels:?}", folded.diagram.norm(i));
        }
    }
    Ok(())
}
