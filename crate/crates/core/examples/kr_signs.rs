//! KR keeps the sparsity of `x1 x2 + x2 x3` at four by choosing the sign of
//! each monomial's expansion so that shared characters cancel.

use nmqc::assignment::assignment_from_poly;
use nmqc::boolfn::AnfForm;
use nmqc::constructions::{construct_ef, construct_kr};
use nmqc::rational::format_rational;
use nmqc::Subset;

fn main() -> nmqc::Result<()> {
    let f = AnfForm::new(
        3,
        [Subset::from_indices(&[1, 2])?, Subset::from_indices(&[2, 3])?],
    )?;

    let ef = construct_ef(&f)?;
    let kr = construct_kr(&f)?;
    println!("EF sparsity {}, KR sparsity {}", ef.sparsity, kr.sparsity);

    let (c0, terms) = kr.poly.to_xor_basis();
    println!("constant {}", format_rational(&c0));
    for (s, c) in terms {
        println!("  {:>5} * (x{})", format_rational(&c), s.indices().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" + x"));
    }

    let a = assignment_from_poly(&kr.poly)?;
    let truth = f.to_truth()?;
    let ok = (0..8u128).all(|x| a.evaluate_mask(x).ok() == Some(truth.eval_index(x as u64)));
    println!("{} qubits, correct on all inputs: {ok}", a.k());
    Ok(())
}
