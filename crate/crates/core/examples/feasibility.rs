//! Which selector sizes can a symmetric function get by with? The decision
//! reduces to an integer linear system solved through a Smith normal form.

use nmqc::boolfn::{csf, count_fn};
use nmqc::feasibility::{
    decide_symmetric_support, minimal_profile, smith_normal_form, FeasibilityQuery, IntegerMatrix,
};

fn main() -> nmqc::Result<()> {
    let a = IntegerMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let s = smith_normal_form(&a);
    s.check(&a)?;
    println!("invariant factors {:?}", s.invariants());

    let f = csf(4, 12)?;
    for t in 0..=2 {
        let d = decide_symmetric_support(&FeasibilityQuery::with_profile(f.clone(), t)?)?;
        let qubits = d.witness.as_ref().map(|w| w.sparsity().to_string());
        println!(
            "C^4 on 12 bits, t = {t}: feasible {}  forbidden sizes {}  qubits {}",
            d.feasible,
            d.forbidden.len(),
            qubits.unwrap_or_else(|| "-".into())
        );
    }

    for m in [2, 4, 8] {
        let g = count_fn(m, 10)?;
        let p = minimal_profile(&g)?;
        println!("count_{m} on 10 bits: minimal t {} after {} decisions", p.t, p.tested);
    }
    Ok(())
}
