// Eliminate the multiplicative cut of the five-wire example and certify the
// step with its correction.

use proofnet_qec::compiler::{compile_net, OrderingChoice};
use proofnet_qec::correction::{code_fidelity, hamiltonian_shift, reduction_correction, verify_correction};
use proofnet_qec::net::{apply_reduction, find_redexes, parse_net};

const NET: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/nets/ex52.net"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let net = parse_net(NET)?;
    let redex = find_redexes(&net).into_iter().next().ok_or("no redex")?;
    println!("{redex}");
    let red = apply_reduction(&net, &redex)?;
    print!("{}", red.after.to_net_text());

    let before = compile_net(&red.before, &OrderingChoice::Linear)?;
    let after = compile_net(&red.after, &OrderingChoice::Linear)?;
    let corr = reduction_correction(&red, &before, &after)?;
    let c: Vec<&str> = corr.c.iter().map(|&i| corr.source_labels[i].as_str()).collect();
    println!("C = {{{}}}", c.join(", "));
    for (&g, &h) in corr.d.iter().zip(&corr.nu) {
        println!("  {} -> {}   {} -> {}", corr.source_labels[g], corr.target_labels[h], corr.source_generators[g], corr.target_generators[h]);
    }
    let r = verify_correction(&corr, 1e-9);
    println!("{r:#?}");
    let shift = hamiltonian_shift(&corr);
    println!("H T = T (H' {:+}) to {:.1e}; without the shift {:.3}", shift.shift, shift.deviation, shift.unshifted_deviation);
    println!("T(Code') = Code with fidelity {:.15}", code_fidelity(&corr));
    assert!(r.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
