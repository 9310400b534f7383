//! Slope arithmetic and the triad fans that feed the exact triangles.
//!
//! `cargo run --example slope_triads -- 5/3 -7/4 3`

use instanton_surgery::slope::{
    farey_resolve, floor_slope, integer_fan, is_slope_triad, mediant, Slope,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec!["5/3".to_string(), "1/2".into(), "-7/4".into(), "3".into()]
    } else {
        args
    };
    for text in inputs {
        let r0: Slope = text.parse()?;
        let fan = match r0.as_integer() {
            Some(n) => integer_fan(n.clone()),
            None => farey_resolve(&r0)?,
        };
        println!("{r0}: floor {}, fan {fan}", floor_slope(&r0)?);
        for (a, b, c) in fan.triads() {
            println!("  triad ({a}, {b}, {c}): {}", is_slope_triad(a, b, c));
        }
    }

    let a = Slope::new(1, 2)?;
    let b = Slope::new(-1, 2)?;
    match mediant(&a, &b) {
        Ok(m) => println!("mediant({a}, {b}) = {m}"),
        Err(e) => println!("mediant({a}, {b}): {e}"),
    }
    Ok(())
}
