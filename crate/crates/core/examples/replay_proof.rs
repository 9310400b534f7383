//! Replays the exact-triangle argument for one slope and prints the trace.
//!
//! `cargo run --example replay_proof -- 7/2 1 3 c0`

use instanton_surgery::knot::{FieldSpec, InvariantPair};
use instanton_surgery::prover::{build_system, certify};
use instanton_surgery::slope::Slope;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let slope: Slope = get(0, "7/2").parse()?;
    let inv = InvariantPair::new(get(1, "1").parse::<i64>()?, get(2, "3").parse::<i64>()?)?;
    let field = match get(3, "f2").as_str() {
        "c0" => FieldSpec::char0(),
        _ => FieldSpec::f2(),
    };

    let sys = build_system(&slope, &inv, &field)?;
    println!(
        "{} variables, {} triangles",
        sys.vars().len(),
        sys.triangles().len()
    );
    for (id, pin) in sys.pins() {
        println!(
            "  pin {} = {}  ({})",
            sys.var(*id).name,
            pin.value,
            pin.label
        );
    }
    for t in sys.triangles() {
        println!("  {}", t.label);
    }

    let report = certify(&slope, &inv, &field)?;
    print!("{}", report.trace());
    Ok(())
}
