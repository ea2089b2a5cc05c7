//! Build an integral-affine sphere from an ℓ-vector: polygon, singularity
//! inventory, total charge, symmetry and an SVG of the fundamental domain.
//!
//! Usage: `cargo run --example ias_sphere -- 3 "2,0^15,2,4,6,4,0,4" [out.svg]`

use enriques_cusps::ias::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (cusp, ell) = match args.as_slice() {
        [c, e, ..] => {
            let cusp: u8 = c.parse()?;
            (cusp, PolarizationVector::parse(cusp_chart(cusp)?, e)?)
        }
        _ => {
            let ex = worked_examples().remove(0);
            (ex.cusp, ex.ell)
        }
    };
    let check = symmetry_predicate(cusp, &ell)?;
    println!("ℓ = {ell}; symmetric for cusp {cusp}: {} {:?}", check.holds, check.violated);
    let config = ChartConfig::validated(ell.chart)?;
    let p = build_polygon(&config, &ell)?;
    println!("polygon {}", serde_json::to_string(&p.to_json())?);
    let inv = singularity_inventory(&p, Glue::Double);
    for s in &inv.items {
        println!("  {:<28} {:?} charge {} monodromy {:?}", s.tag, s.place, s.charge, s.monodromy);
    }
    println!("total {:?}", total_charge(&inv));
    let action = enriques_symmetry_action(cusp, &p)?;
    println!("symmetry: swaps hemispheres {}, fixed locus {:?}", action.swaps_hemispheres, action.fixed_locus);
    if let Some(path) = args.get(2) {
        std::fs::write(path, p.to_svg())?;
        println!("wrote {path}");
    }
    Ok(())
}
