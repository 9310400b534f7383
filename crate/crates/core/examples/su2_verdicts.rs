//! SU(2) obstruction verdicts with their hypothesis checklists.
//!
//! `cargo run --example su2_verdicts`

use instanton_surgery::knot::bundled_knots;
use instanton_surgery::slope::Slope;
use instanton_surgery::su2::{is_odd_prime_power, verdict_branched, verdict_traceless};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let knots = bundled_knots();
    let pretzel = knots
        .iter()
        .find(|k| k.name == "P(-3,5,7)")
        .expect("bundled");
    for (text, sgmme) in [
        ("9/2", false),
        ("15/4", false),
        ("7/1", false),
        ("7/1", true),
        ("27/5", false),
    ] {
        let r: Slope = text.parse()?;
        for v in [
            verdict_traceless(pretzel, &r, sgmme)?,
            verdict_branched(pretzel, &r, sgmme)?,
        ] {
            let branched = v
                .branched_slope
                .map(|s| format!(" at {s}"))
                .unwrap_or_default();
            println!("{} {r} sgmme={sgmme}: {}{branched}", v.theorem, v.outcome);
            for c in &v.checklist {
                println!(
                    "    [{}] {}: {}",
                    if c.pass { "x" } else { " " },
                    c.name,
                    c.detail
                );
            }
        }
    }

    let powers: Vec<u32> = (1..=100)
        .filter(|&p| is_odd_prime_power(&p.into()))
        .collect();
    println!("odd prime powers up to 100: {powers:?}");
    Ok(())
}
