// Normalise a three-cut chain and compose the corrections of every step.

use proofnet_qec::compiler::{compile_net, OrderingChoice};
use proofnet_qec::correction::{composite_report, reduction_correction, verify_correction, Correction};
use proofnet_qec::net::{apply_reduction, find_redexes, parse_net};

const NET: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/nets/chain3.net"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut net = parse_net(NET)?;
    let mut steps: Vec<Correction> = Vec::new();
    while let Some(redex) = find_redexes(&net).into_iter().next() {
        let red = apply_reduction(&net, &redex)?;
        let a = compile_net(&red.before, &OrderingChoice::Linear)?;
        let b = compile_net(&red.after, &OrderingChoice::Linear)?;
        println!("{redex}: {} -> {} qubits", a.code.n, b.code.n);
        steps.push(reduction_correction(&red, &a, &b)?);
        net = red.after;
    }
    let mut total = steps[0].clone();
    for (k, t) in steps.iter().enumerate().skip(1) {
        total = total.compose(t)?;
        let r = verify_correction(&total, 1e-9);
        let comp = composite_report(&total, &steps[0]);
        println!(
            "after {} steps: passed {}, |C| = {}, nested image {:.1e}, code fidelity {:.12}",
            k + 1,
            r.passed(),
            total.c.len(),
            comp.nested_image_deviation,
            comp.code_fidelity
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
