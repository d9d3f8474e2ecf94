// Random proof nets through every reduction check.

use proofnet_qec::generate::{check_net, random_nets, GenConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let nets = random_nets(seed, 20, GenConfig { max_qubits: 10, ..GenConfig::default() });
    print!("first net:\n{}", nets[0].to_net_text());
    let mut passed = 0;
    for net in &nets {
        let rec = check_net(net, 1e-9)?;
        passed += rec.passed(1e-9) as usize;
        let redexes: Vec<&str> = rec.steps.iter().map(|s| s.redex.split(' ').next().unwrap_or("")).collect();
        println!("{:>2} qubits, {} paths, redexes [{}]", rec.qubits, rec.paths, redexes.join(", "));
    }
    println!("{passed}/{} verified", nets.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
