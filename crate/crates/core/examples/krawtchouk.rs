//! For symmetric functions the Fourier spectrum only depends on |S|, and
//! one Krawtchouk matrix product gives it without touching 2^n entries.

use nmqc::boolfn::csf;
use nmqc::rational::format_rational;
use nmqc::transforms::{krawtchouk_matrix, symmetric_coefficients, walsh_hadamard};

fn main() -> nmqc::Result<()> {
    let k = krawtchouk_matrix(4);
    for row in k.rows() {
        println!("{row:?}");
    }

    let f = csf(2, 6)?;
    let by_size: Vec<String> = symmetric_coefficients(&f).iter().map(format_rational).collect();
    println!("C^2 on 6 bits, coefficient by |S|: {}", by_size.join(" "));

    let full = walsh_hadamard(&f.to_boolean_function()?)?;
    let agree = full
        .iter()
        .enumerate()
        .all(|(s, c)| *c == symmetric_coefficients(&f)[(s as u64).count_ones() as usize]);
    println!("matches the full transform: {agree}");

    let big = csf(4, 200)?;
    let c = symmetric_coefficients(&big);
    println!("C^4 on 200 bits, coefficient at |S| = 1: {}", format_rational(&c[1]));
    Ok(())
}
