//! Knot determinants from Seifert matrices and Alexander polynomials, and
//! ingestion of a knot table.
//!
//! `cargo run --example knot_determinants -- path/to/knots.csv`

use instanton_surgery::knot::{bundled_knots, knot_determinant, mirror, KnotTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in bundled_knots() {
        let m = mirror(&k);
        println!(
            "{:<10} det {}  mirror {} det {}",
            k.name,
            knot_determinant(&k)?,
            m.name,
            knot_determinant(&m)?
        );
    }

    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/knots.csv").to_string());
    let (table, errors) = KnotTable::load(&path)?;
    println!("\n{path}: {} records", table.records().len());
    for k in table.records() {
        let invariants: Vec<String> = k
            .invariants
            .iter()
            .map(|(c, inv)| format!("char {c}: {inv}"))
            .collect();
        println!(
            "  {:<14} det {}  {}",
            k.name,
            knot_determinant(k)?,
            invariants.join(", ")
        );
    }
    for e in errors {
        println!("  rejected: {e}");
    }
    Ok(())
}
