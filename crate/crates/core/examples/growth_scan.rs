//! Scans C^k over a range of `n` and checks that sizes up to `k/2` suffice
//! while `k/2 - 1` does not.

use nmqc::feasibility::{conjecture_scan, RowRule};

fn main() -> nmqc::Result<()> {
    let report = conjecture_scan(&[2, 4, 6], 8..=24, RowRule::Profile)?;
    print!("{}", report.to_csv()?);
    println!("counterexamples: {:?}", report.counterexamples);
    Ok(())
}
