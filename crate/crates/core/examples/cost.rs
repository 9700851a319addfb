//! Resource estimates. C^2 only needs Clifford measurements, so its cost is
//! exact and linear in `n`; C^5 needs pi/16 rotations and falls back to the
//! approximate synthesis bound.

use nmqc::assignment::assignment_from_poly;
use nmqc::boolfn::csf;
use nmqc::circuits::{total_cost, CostConfig, GhzVariant};
use nmqc::constructions::construct_csf;
use nmqc::polynomial::csf_power2_poly;

fn main() -> nmqc::Result<()> {
    let cfg = CostConfig::default();
    println!("C^2, exact Clifford cost");
    for n in [8, 16, 32, 64, 128] {
        let a = assignment_from_poly(&csf_power2_poly(2, n)?)?;
        let t = total_cost(&a, &cfg, GhzVariant::Log)?;
        println!(
            "  n {n:>3}  gates {:>4}  width {:>3}  depth {}  exact {}",
            t.total.gates, t.total.width, t.total.depth, t.exact
        );
    }

    let a = assignment_from_poly(&construct_csf(&csf(5, 6)?)?.poly)?;
    for variant in [GhzVariant::Log, GhzVariant::Const] {
        match total_cost(&a, &cfg, variant) {
            Ok(t) => println!(
                "C^5 on 6 bits, ghz {variant}: level {} exact {}  depth {:.2} width {} gates {:.2}",
                t.level, t.exact, t.total.depth, t.total.width, t.total.gates
            ),
            Err(e) => println!("C^5 on 6 bits, ghz {variant}: {e}"),
        }
    }
    Ok(())
}
