// `H = −X₁X₂ − X₂X₃`: spectrum and ground space of a three-qubit wire.

use proofnet_qec::compiler::{codespace_basis, compile_net, hamiltonian, spectrum, OrderingChoice};
use proofnet_qec::linalg::{ground_space, subspace_fidelity};
use proofnet_qec::net::parse_net;

const NET: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/nets/wire3.net"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = compile_net(&parse_net(NET)?, &OrderingChoice::Linear)?;
    let h = hamiltonian(&c.code);
    for t in &h.terms {
        println!("-{t}");
    }
    let s = spectrum(&h, 14)?;
    for (v, m) in &s.distinct {
        println!("eigenvalue {v:>5.2} multiplicity {m}");
    }
    let (_, ground) = ground_space(&h.dense(14)?);
    let code = codespace_basis(&c.code, 14)?;
    println!("ground space vs codespace fidelity {:.15}", subspace_fidelity(&ground, &code));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
