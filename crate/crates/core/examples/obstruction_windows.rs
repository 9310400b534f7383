//! Where the simple-knot gap vanishes, for a few invariant pairs.
//!
//! `cargo run --example obstruction_windows`

use instanton_surgery::knot::InvariantPair;
use instanton_surgery::slope::Slope;
use instanton_surgery::su2::{obstruction_window, simple_knot_gap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m, r) in [(0, 0), (0, 4), (4, 4), (3, 5), (-2, 2)] {
        let inv = InvariantPair::new(m, r)?;
        let w = obstruction_window(&inv);
        println!("{inv}: {}", w.window);
        for line in &w.derivation {
            println!("    {line}");
        }
        let gaps: Vec<String> = ["1", "5/2", "4", "9/2", "6"]
            .iter()
            .map(|t| {
                let s: Slope = t.parse().expect("slope");
                format!("{s}:{}", simple_knot_gap(&s, &inv).expect("finite"))
            })
            .collect();
        println!("    gaps {}", gaps.join(" "));
    }
    Ok(())
}
