// Parse formulas, take duals, and look at their atom occurrences.

use proofnet_qec::formula::Formula;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["A * ~B", "A * B | C", "~(A | (B * ~C))", "X"] {
        let f: Formula = text.parse()?;
        let dual = f.negate();
        println!("{text:<18} parsed {f:<16} dual {dual:<22} depth {}", f.depth());
        assert!(f.is_dual_of(&dual));
        assert_eq!(dual.negate(), f);
        let atoms: Vec<String> = f.atoms_of().iter().map(|(n, s)| format!("{}{n}", s.symbol())).collect();
        println!("{:<18} atoms {}", "", atoms.join(" "));
    }
    match "A * (B".parse::<Formula>() {
        Err(e) => println!("error: {e}"),
        Ok(f) => return Err(format!("parsed {f} unexpectedly").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
