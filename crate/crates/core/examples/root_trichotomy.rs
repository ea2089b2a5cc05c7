//! Check that every root of the fixed lattice up to a height bound folds
//! from a fixed root or an orthogonal pair.
//!
//! Usage: `cargo run --release --example root_trichotomy -- 2`

use enriques_cusps::folding::verify_root_trichotomy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h: i64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2);
    let r = verify_root_trichotomy(h)?;
    println!("height {}: {} roots", r.height, r.roots_examined);
    println!("  fixed −2: {}, fixed −4: {}, orthogonal pair: {}", r.fixed_minus2, r.fixed_minus4, r.orthogonal_pair);
    println!("  violations: {}", r.violations.len());
    for (i, w) in r.witnesses.iter().enumerate() {
        println!("  case {}: {w:?}", i + 1);
    }
    Ok(())
}
