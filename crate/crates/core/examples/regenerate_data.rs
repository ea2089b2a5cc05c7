//! Recompute both hyperbolic Coxeter diagrams with Vinberg's algorithm and
//! write the frozen data files with their content hashes.
//!
//! Usage: `cargo run --release --example regenerate_data -- [output-dir]`
//! (defaults to the crate's `data/` directory).

use enriques_cusps::diagrams::{self, Chart};
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    std::fs::create_dir_all(&dir)?;
    let mut files = Vec::new();
    for chart in Chart::ALL {
        let t = std::time::Instant::now();
        let d = diagrams::regenerate(chart)?;
        println!("{chart}: {} roots in {:.1?}", d.len(), t.elapsed());
        let text = diagrams::to_frozen_json(&d);
        std::fs::write(dir.join(chart.file_name()), &text)?;
        files.push((chart.file_name(), text));
    }
    let refs: Vec<(&str, &str)> = files.iter().map(|(n, t)| (*n, t.as_str())).collect();
    std::fs::write(dir.join("SHA256SUMS"), diagrams::sha256sums(&refs))?;
    println!("wrote {}", dir.display());
    Ok(())
}
