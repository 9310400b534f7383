//! Verdict matrix for every knot in a table, using the library directly.
//!
//! `cargo run --example scan_table -- data/knots.csv 1..15/2`

use instanton_surgery::cli::parse_slope_spec;
use instanton_surgery::knot::KnotTable;
use instanton_surgery::su2::{verdict_branched, verdict_traceless, Outcome};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let path = args
        .first()
        .cloned()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/knots.csv").to_string());
    let slopes = parse_slope_spec(args.get(1).map_or("1..15/2", String::as_str))?;
    let (table, _) = KnotTable::load(&path)?;

    let header: Vec<String> = slopes.iter().map(|s| s.to_string()).collect();
    println!("{:<14} {}", "knot", header.join(" "));
    for k in table.records() {
        let cells: Vec<String> = slopes
            .iter()
            .map(|s| {
                let mark = |o: Outcome| o == Outcome::NotAbelian;
                let t = verdict_traceless(k, s, false)
                    .map(|v| mark(v.outcome))
                    .unwrap_or(false);
                let b = verdict_branched(k, s, false)
                    .map(|v| mark(v.outcome))
                    .unwrap_or(false);
                let cell = match (t, b) {
                    (true, true) => "TB",
                    (true, false) => "T.",
                    (false, true) => ".B",
                    (false, false) => "..",
                };
                format!("{cell:>width$}", width = s.to_string().len())
            })
            .collect();
        println!("{:<14} {}", k.name, cells.join(" "));
    }
    println!("T: not traceless SU(2)-abelian, B: branched lift not SU(2)-abelian");
    Ok(())
}
