//! Parse lattice expressions and print their 2-elementary invariants,
//! signatures and discriminant groups.
//!
//! Usage: `cargo run --example lattice_invariants -- "U+U(2)+E8(2)" "A1(2)"`

use enriques_cusps::lattice::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut exprs: Vec<String> = std::env::args().skip(1).collect();
    if exprs.is_empty() {
        exprs = ["U", "U+U(2)+E8(2)", "U(2)+E8+E8", "T_dP", "T_En"].map(String::from).to_vec();
    }
    for e in exprs {
        let l = parse(&e)?;
        let s = l.signature();
        match l.two_elementary_invariants() {
            Ok(inv) => println!("{e:<16} rank {:>2}  sig ({},{})  det {}  {inv}", l.rank(), s.plus, s.minus, l.determinant()),
            Err(err) => println!("{e:<16} rank {:>2}  sig ({},{})  det {}  not 2-elementary: {err}", l.rank(), s.plus, s.minus, l.determinant()),
        }
    }
    Ok(())
}
