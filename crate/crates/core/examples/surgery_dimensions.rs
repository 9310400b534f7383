//! Framed and dual-knot dimensions over a range of slopes.
//!
//! `cargo run --example surgery_dimensions -- 2 4` evaluates `(M, R) = (2, 4)`.

use instanton_surgery::dimension::{dim_dual_reduced_f2, dim_dual_unreduced, dim_framed};
use instanton_surgery::knot::{FieldSpec, InvariantPair};
use instanton_surgery::slope::Slope;
use instanton_surgery::surgery::{h1_surgery, BundleClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let (m, r) = match args[..] {
        [m, r] => (m, r),
        _ => (2, 4),
    };
    let inv = InvariantPair::new(m, r)?;
    let (c0, f2) = (FieldSpec::char0(), FieldSpec::f2());
    println!("{inv}");
    println!("slope\tH1\tframed[0]\tframed[mu]\tdual c0\tdual f2\treduced f2");
    for text in ["-3", "-1/2", "0", "1", "3/2", "2", "7/3", "3", "9/2", "5"] {
        let s: Slope = text.parse()?;
        println!(
            "{s}\t{}\t{}\t{}\t{}\t{}\t{}",
            h1_surgery(&s)?,
            dim_framed(&s, &inv, &c0, BundleClass::Zero)?,
            dim_framed(&s, &inv, &c0, BundleClass::Mu)?,
            dim_dual_unreduced(&s, &inv, &c0)?,
            dim_dual_unreduced(&s, &inv, &f2)?,
            dim_dual_reduced_f2(&s, &inv)?
        );
    }
    Ok(())
}
