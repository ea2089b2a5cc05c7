//! Scan reflection products of orthogonal roots for involutions whose fixed
//! lattice has the right invariants.
//!
//! Usage: `cargo run --example involution_search -- [a|b|c]`

use enriques_cusps::folding::{search_involutions, SearchFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let family = match std::env::args().nth(1).as_deref() {
        Some("a") => SearchFamily::A,
        Some("c") => SearchFamily::C,
        _ => SearchFamily::B,
    };
    let hits = search_involutions(family)?;
    println!("{family:?}: {} hits", hits.len());
    for h in hits {
        println!("  reflect {:?}: rank {} {:?}", h.reflected, h.fixed_rank, h.invariants.map(|i| i.to_string()));
    }
    Ok(())
}
