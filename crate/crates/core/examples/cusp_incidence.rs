//! Compute the incidence graph of 0-cusps and 1-cusps and the divisor counts
//! of the toroidal and semitoroidal compactifications.
//!
//! Usage: `cargo run --release --example cusp_incidence`

use enriques_cusps::cusps::{cusp_data, cusp_incidence_graph, semitoroidal_divisor_counts, toroidal_divisor_counts};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cusps = cusp_data()?;
    for c in &cusps {
        let t = toroidal_divisor_counts(c)?;
        let s = semitoroidal_divisor_counts(c);
        println!("cusp {}: toroidal {}+{}, semitoroidal {}+{}", c.folding.cusp, t.type2, t.type3, s.type2, s.type3);
    }
    let g = cusp_incidence_graph(&cusps)?;
    for z in &g.zero_cusps {
        println!("0-cusp {}: {} irrelevant [{}] toroidal over: {}", z.label, z.fixed_lattice, z.irrelevant, z.toroidal_over);
    }
    for o in &g.one_cusps {
        println!("1-cusp {:<3} over {:?} toroidal over: {}", o.label, o.zero_cusps, o.toroidal_over);
    }
    println!("degree sum {}", g.degree_sum());
    Ok(())
}
