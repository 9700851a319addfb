//! Lowers an assignment to a gate-level netlist and runs it on a state
//! vector for every input.

use nmqc::assignment::assignment_from_poly;
use nmqc::boolfn::parse_function;
use nmqc::circuits::{emit_netlist, execute, GhzVariant};
use nmqc::constructions::{construct, Method};

fn main() -> nmqc::Result<()> {
    let f = parse_function("anf: x1*x2 + x3")?;
    let a = assignment_from_poly(&construct(Method::Kr, &f)?.poly)?;
    let net = emit_netlist(&a, GhzVariant::Log)?;
    net.validate()?;
    print!("{}", net.to_text());
    println!("cost {:?}", net.cost());

    for x in 0..1u128 << f.arity() {
        let e = execute(&net, x)?;
        println!("x = {x:03b}  p_one {:.6}  want {}", e.p_one, f.eval_mask(x) as u8);
    }
    Ok(())
}
