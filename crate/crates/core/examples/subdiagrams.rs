//! Enumerate elliptic and maximal parabolic subdiagrams of a frozen Coxeter
//! diagram.
//!
//! Usage: `cargo run --example subdiagrams -- [18,0,0|18,2,0]`

use enriques_cusps::diagrams::{load, Chart};
use enriques_cusps::subdiagram::Analyzer;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chart = match std::env::args().nth(1).as_deref() {
        Some("18,2,0") => Chart::TwoElementary,
        _ => Chart::Unimodular,
    };
    let d = load(chart)?;
    let dim = d.lattice.rank() - 1;
    let mut an = Analyzer::new(&d);
    let parabolic = an.maximal_parabolics(dim);
    println!("{chart}: {} maximal parabolic subdiagrams", parabolic.len());
    for m in parabolic {
        println!("  {}", an.label(m));
    }
    let elliptic = an.elliptic_subsets(dim);
    println!("{chart}: {} elliptic subdiagrams of rank {dim}", elliptic.len());
    println!("finite volume: {}", an.has_finite_volume(dim));
    Ok(())
}
