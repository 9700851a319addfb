//! The complete symmetric function C^5 on six bits. The CSF construction
//! needs 43 qubits where the direct ANF expansion needs 62.

use std::collections::BTreeMap;

use nmqc::assignment::{assignment_from_poly, clifford_level};
use nmqc::boolfn::csf;
use nmqc::constructions::{construct_csf, construct_ef};
use nmqc::rational::{format_rational, rat};

fn main() -> nmqc::Result<()> {
    let f = csf(5, 6)?;
    let r = construct_csf(&f)?;
    let a = assignment_from_poly(&r.poly)?;
    println!("CSF: {} qubits, granularity {}, level {}", a.k(), r.granularity, clifford_level(&a)?);

    // Selector size -> angle class -> count, with phi shown in (-1, 1].
    let mut census: BTreeMap<usize, BTreeMap<String, usize>> = BTreeMap::new();
    for q in a.qubits() {
        let mut phi = q.phi.turns().clone();
        if phi > rat(1, 1) {
            phi -= rat(2, 1);
        }
        *census
            .entry(q.selector.support.len())
            .or_default()
            .entry(format!("{} pi", format_rational(&phi)))
            .or_default() += 1;
    }
    for (size, classes) in &census {
        println!("  |S| = {size}: {classes:?}");
    }

    let ok = (0..64u128).all(|x| a.evaluate_mask(x).ok() == Some(f.eval_mask(x)));
    println!("correct on all 64 inputs: {ok}");

    let ef = construct_ef(&f.to_anf(1 << 20)?)?;
    println!("EF: {} terms, {} of them non-constant", ef.support, ef.sparsity);
    Ok(())
}
