//! Runs every applicable construction on a few functions and prints the
//! comparison tables.

use std::time::Duration;

use nmqc::boolfn::parse_function;
use nmqc::constructions::compare_all;

fn main() -> nmqc::Result<()> {
    for spec in ["anf: x1*x2 + x2*x3", "C:4:8", "C:6:8", "count:4:7"] {
        let f = parse_function(spec)?;
        let c = compare_all(&f, Duration::from_secs(10));
        println!("{spec}");
        print!("{}", c.to_csv(false)?);
        for s in &c.skipped {
            println!("  skipped {}: {}", s.method.name(), s.reason);
        }
        println!();
    }
    Ok(())
}
