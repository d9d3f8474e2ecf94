// Majorana operators of a Dirac chain and the wire stabilizers they pair into.

use proofnet_qec::majorana::{gamma, majorana_check, Chain};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let chain = Chain::new(1)?;
    println!("L = 1: gamma_1 =\n{}gamma_2 =\n{}", gamma(&chain, 1)?.matrix(), gamma(&chain, 2)?.matrix());
    for l in 2..=5 {
        let r = majorana_check(l)?;
        let ok: Vec<String> = r.stabilizers.iter().map(|(j, eq)| format!("S{j}={}", if *eq { "XX" } else { "?" })).collect();
        println!(
            "L = {l}: {}  ground {:.3} x{}  wire fidelity {:.12}",
            ok.join(" "),
            r.ground_energy,
            r.ground_degeneracy,
            r.wire_fidelity
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
