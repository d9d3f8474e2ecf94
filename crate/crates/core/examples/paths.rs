// Validate a proof net and trace its persistent paths.

use proofnet_qec::net::{atom_pairings, parse_net, persistent_paths, validate};

const NET: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/nets/ex51.net"));

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let net = parse_net(NET)?;
    let report = validate(&net);
    println!("{} links, {} edges, valid: {}", net.link_count(), net.edge_count(), report.is_valid());
    let pairing = atom_pairings(&net)?;
    for q in &pairing.qubits {
        let ends: Vec<String> = q.ends.iter().map(|o| format!("{}/{}", net.edge(o.edge).id, o.pos)).collect();
        println!("qubit {} at {} joins {}", q.id, net.link(q.link).id, ends.join(" & "));
    }
    for p in persistent_paths(&net, &pairing)? {
        let steps: Vec<String> = p
            .steps
            .iter()
            .map(|s| format!("{}{}", net.edge(s.occ.edge).id, if s.forward { ">" } else { "<" }))
            .collect();
        println!("path: {}  ({} occurrences, {} qubits)", steps.join(" "), p.len(), p.qubits.len());
    }

    // a structure failing the criterion
    let cyclic = parse_net(include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/nets/cycle.net")))?;
    for v in validate(&cyclic).violations {
        println!("cycle.net: {}: {}", v.subject, v.message);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
