// Exterior-algebra operators on a small Fock space: anticommutation
// relations, Jordan-Wigner images, grading and Bell states.

use proofnet_qec::fock::{
    bell_state, car_check, grading_operator, jw_fermionic, jw_operator, jw_pauli, FockSpace, JwKind,
};
use proofnet_qec::linalg::exactly_equal;
use proofnet_qec::pauli::Pauli;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let space = FockSpace::new(n)?;
    let car = car_check(&space);
    println!("CAR over {} pairs: max deviation {}", car.pairs_checked, car.max_deviation);
    for i in 1..=n {
        for which in [JwKind::Plus(i), JwKind::Z(i), JwKind::Minus(i)] {
            let same = exactly_equal(jw_operator(&space, which)?.matrix(), jw_fermionic(&space, which)?.matrix());
            println!("{which:?}: {} {}", jw_pauli(n, which), if same { "ok" } else { "MISMATCH" });
        }
    }
    let zs = (0..n).fold(Pauli::identity(n), |p, q| &p * &Pauli::single(n, q, 'Z'));
    println!("G = Z...Z: {}", exactly_equal(grading_operator(&space).matrix(), &zs.dense_matrix(n)?));
    let g = grading_operator(&space);
    for a in [0, 1] {
        let v = bell_state(&space, a);
        let w = g.apply(&v);
        println!("Bell state a={a}: norm {:.12}, grading eigenvalue {:+.1}", v.norm(), v.inner(&w).re);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
