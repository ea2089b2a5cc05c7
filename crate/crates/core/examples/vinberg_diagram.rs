//! Run Vinberg's algorithm on a hyperbolic lattice and print the simple
//! roots with the Coxeter diagram's edges.
//!
//! Usage: `cargo run --example vinberg_diagram -- "U+E8+E8"`

use enriques_cusps::diagrams::vinberg_options;
use enriques_cusps::lattice::parse;
use enriques_cusps::vinberg::vinberg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let expr = std::env::args().nth(1).unwrap_or_else(|| "U+E8+E8".into());
    let l = parse(&expr)?;
    let opts = vinberg_options(&l)?;
    let t = std::time::Instant::now();
    let out = vinberg(&l, &opts)?;
    let d = &out.diagram;
    println!("{expr}: {} roots, complete {}, {:.1?}", d.len(), out.complete, t.elapsed());
    for (i, r) in d.roots.iter().enumerate() {
        println!("  α{:<2} norm {:>2}  {r:?}", d.labels[i], d.norm(i));
    }
    for (i, j, e) in d.edges() {
        println!("  α{}–α{}: {}", d.labels[i], d.labels[j], e.tag());
    }
    for rel in d.relations() {
        println!("  relation {rel:?}");
    }
    Ok(())
}
