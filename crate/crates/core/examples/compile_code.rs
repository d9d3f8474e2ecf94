// Compile the nine-qubit example net to its stabilizer code and check the
// codespace against `|+⟩^⊗9` and `|−⟩^⊗9`.

use num_complex::Complex64;
use proofnet_qec::compiler::{codespace_report, compile_net, wire_decomposition, OrderingChoice};
use proofnet_qec::linalg::{subspace_fidelity, CMatrix, CVector};
use proofnet_qec::net::parse_net;

const NET: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/nets/ex51.net"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = compile_net(&parse_net(NET)?, &OrderingChoice::Linear)?;
    for g in &c.code.generators {
        println!("{:>4}/{}  {}", c.net.edge(g.edge).id, g.pos, g.pauli);
    }
    println!(
        "n = {}, rank = {}, dim = {}",
        c.code.n,
        c.code.group.independent_rank(),
        c.code.codespace_dimension()
    );
    let wires = wire_decomposition(&c.code, c.paths.as_deref().unwrap_or_default())?;
    println!("wire blocks: {:?}", wires.blocks.iter().map(|b| b.len).collect::<Vec<_>>());

    let (report, basis) = codespace_report(&c.code, 14)?;
    let dim = 1 << c.code.n;
    let amp = 1.0 / (dim as f64).sqrt();
    let plus = CVector::from_element(dim, Complex64::new(amp, 0.0));
    let minus = CVector::from_fn(dim, |b, _| Complex64::new(if b.count_ones() % 2 == 0 { amp } else { -amp }, 0.0));
    let fidelity = subspace_fidelity(&basis, &CMatrix::from_columns(&[plus, minus]));
    println!("ground energy {:.6} x{}", report.ground_energy, report.ground_degeneracy);
    println!("fidelity with span(|+..+>, |-..->) = {fidelity:.15}");
    assert!(fidelity >= 1.0 - 1e-9);

    // the declaration ordering gives a conjugate code with Z strings
    let d = compile_net(&c.net, &OrderingChoice::Declaration)?;
    println!("declaration ordering, first generator: {}", d.code.generators[0].pauli);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
