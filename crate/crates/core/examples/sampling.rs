//! Seeded sampling of GHZ measurement outcomes. A deterministic assignment
//! always decodes to `f(x)`; perturbing one angle makes the output random
//! with the rate predicted by the cosine of the total angle.

use nmqc::assignment::{
    assignment_from_poly, dense_expectation, sample_outcomes, AngleRational, MeasurementAssignment,
};
use nmqc::boolfn::BooleanFunction;
use nmqc::constructions::construct_fr;
use nmqc::rational::rat;

fn main() -> nmqc::Result<()> {
    let and2 = BooleanFunction::from_fn(2, |x| x == 0b11)?;
    let a = assignment_from_poly(&construct_fr(&and2)?.poly)?;

    let s = sample_outcomes(&a, 0b11, 10_000, 7)?;
    println!("exact:     output ones {}/{}", s.output_ones, s.shots);

    let mut qubits = a.qubits().to_vec();
    qubits[0].phi = qubits[0].phi.add(&AngleRational::new(rat(1, 8)));
    let perturbed = MeasurementAssignment::new(2, qubits, a.final_constant())?;
    let s = sample_outcomes(&perturbed, 0b11, 10_000, 7)?;
    let oracle = (1.0 - dense_expectation(&perturbed, 0b11)?) / 2.0;
    println!(
        "perturbed: parity rate {:.4}, oracle {:.4}, {:+.2} sigma",
        s.parity_rate(),
        oracle,
        (s.parity_rate() - oracle) / s.sigma()
    );
    Ok(())
}
