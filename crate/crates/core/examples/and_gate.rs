//! AND of two bits: Fourier coefficients, the three-qubit assignment, and a
//! check of every input against the dense GHZ simulation.

use nmqc::assignment::{assignment_from_poly, clifford_level, dense_expectation};
use nmqc::boolfn::BooleanFunction;
use nmqc::constructions::construct_fr;
use nmqc::rational::format_rational;
use nmqc::transforms::walsh_hadamard;

fn main() -> nmqc::Result<()> {
    let and2 = BooleanFunction::from_fn(2, |x| x == 0b11)?;

    let coeffs: Vec<String> = walsh_hadamard(&and2)?.iter().map(format_rational).collect();
    println!("fourier coefficients (S = {{}}, {{1}}, {{2}}, {{1,2}}): {}", coeffs.join(", "));

    let report = construct_fr(&and2)?;
    let a = assignment_from_poly(&report.poly)?;
    println!("{} qubits, level {}", a.k(), clifford_level(&a)?);
    for q in a.qubits() {
        println!("  selector {:?}  theta {}  phi {}", q.selector.support.indices(), q.theta, q.phi);
    }

    for x in 0..4u128 {
        let out = a.evaluate_mask(x)?;
        let dense = dense_expectation(&a, x)?;
        println!("x = {x:02b}  output {}  <M> = {dense:+.3}", out as u8);
    }
    Ok(())
}
