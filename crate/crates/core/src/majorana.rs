//! Majorana chain built from `L` Dirac fermions.
//!
//! `γ_{2j−1} = c_j† + c_j`, `γ_{2j} = i(c_j† − c_j)` and
//! `S_j = −iγ_{2j}γ_{2j+1}`, which is the wire stabilizer `X_jX_{j+1}`.

use serde::Serialize;
use thiserror::Error;

use crate::compiler::{codespace_from_generators, compile_net, wire_decomposition, CompileError, OrderingChoice};
use crate::fock::{contract_op, wedge_op, FockError, FockOperator, FockSpace};
use crate::formula::Formula;
use crate::linalg::{c, exactly_equal, ground_space, group_eigenvalues, hermitian_eigen, subspace_fidelity, EIGEN_GAP};
use crate::net::{LinkKind, ProofStructure, Slot};
use crate::pauli::{Pauli, PauliError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MajoranaError {
    #[error("site {0} outside 1..={1}")]
    Site(usize, usize),
    #[error("a chain needs at least {0} sites")]
    TooShort(usize),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

#[derive(Clone, Debug)]
pub struct Chain {
    space: FockSpace,
    /// `c_j` at index `j − 1`.
    lower: Vec<FockOperator>,
    raise: Vec<FockOperator>,
}

impl Chain {
    pub fn new(length: usize) -> Result<Chain, MajoranaError> {
        if length == 0 {
            return Err(MajoranaError::TooShort(1));
        }
        let space = FockSpace::new(length)?;
        let lower = (1..=length).map(|j| contract_op(&space, j)).collect::<Result<_, _>>()?;
        let raise = (1..=length).map(|j| wedge_op(&space, j)).collect::<Result<_, _>>()?;
        Ok(Chain { space, lower, raise })
    }

    pub fn length(&self) -> usize {
        self.lower.len()
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    fn site(&self, j: usize) -> Result<usize, MajoranaError> {
        if j == 0 || j > self.length() {
            return Err(MajoranaError::Site(j, self.length()));
        }
        Ok(j - 1)
    }

    pub fn c(&self, j: usize) -> Result<&FockOperator, MajoranaError> {
        Ok(&self.lower[self.site(j)?])
    }

    pub fn c_dag(&self, j: usize) -> Result<&FockOperator, MajoranaError> {
        Ok(&self.raise[self.site(j)?])
    }
}

/// `(γ_{2j−1}, γ_{2j})`.
pub fn majorana_ops(chain: &Chain, j: usize) -> Result<(FockOperator, FockOperator), MajoranaError> {
    let (a, a_dag) = (chain.c(j)?, chain.c_dag(j)?);
    Ok((a_dag + a, (a_dag - a).scale(c(0.0, 1.0))))
}

/// `γ_k` for `1 ≤ k ≤ 2L`.
pub fn gamma(chain: &Chain, k: usize) -> Result<FockOperator, MajoranaError> {
    if k == 0 || k > 2 * chain.length() {
        return Err(MajoranaError::Site(k, 2 * chain.length()));
    }
    let (odd, even) = majorana_ops(chain, k.div_ceil(2))?;
    Ok(if k % 2 == 1 { odd } else { even })
}

/// `S_j` for `1 ≤ j < L`.
pub fn chain_stabilizers(chain: &Chain) -> Result<Vec<FockOperator>, MajoranaError> {
    (1..chain.length())
        .map(|j| Ok((&gamma(chain, 2 * j)? * &gamma(chain, 2 * j + 1)?).scale(c(0.0, -1.0))))
        .collect()
}

/// `H_MC = −Σ S_j`.
pub fn chain_hamiltonian(chain: &Chain) -> Result<FockOperator, MajoranaError> {
    let mut h = chain.space.identity().scale(c(0.0, 0.0));
    for s in chain_stabilizers(chain)? {
        h = &h - &s;
    }
    Ok(h)
}

/// `Σ (t(c_i†c_{i+1} + c_{i+1}†c_i) + c_ic_{i+1} + c_{i+1}†c_i†)`, the
/// hopping-plus-pairing form with hopping amplitude `t`.
pub fn hopping_pairing_hamiltonian(chain: &Chain, hopping: f64) -> Result<FockOperator, MajoranaError> {
    let mut h = chain.space.identity().scale(c(0.0, 0.0));
    for i in 1..chain.length() {
        let hop = &(chain.c_dag(i)? * chain.c(i + 1)?) + &(chain.c_dag(i + 1)? * chain.c(i)?);
        let pair = &(chain.c(i)? * chain.c(i + 1)?) + &(chain.c_dag(i + 1)? * chain.c_dag(i)?);
        h = &(&h + &hop.scale(c(hopping, 0.0))) + &pair;
    }
    Ok(h)
}

/// A structure whose first persistent path is a single wire of `len` qubits:
/// axioms chained through cuts, ending in a tensor when `len` is even.
pub fn wire_net(len: usize) -> ProofStructure {
    assert!(len >= 1);
    let axioms = len / 2 + 1;
    let mut net = ProofStructure::new();
    let (x, nx) = (Formula::pos("X"), Formula::neg("X"));
    for a in 1..=axioms {
        net.add_link(&format!("a{a}"), LinkKind::Ax).unwrap();
    }
    let cuts = if len % 2 == 1 { axioms - 1 } else { axioms - 2 };
    for k in 1..=cuts {
        net.add_link(&format!("k{k}"), LinkKind::Cut).unwrap();
    }
    for name in ["c1", "c2", "c3"] {
        net.add_link(name, LinkKind::Conclusion).unwrap();
    }
    let mut e = 0;
    let mut edge = |net: &mut ProofStructure, src: &str, dst: &str, slot, label: &Formula| {
        e += 1;
        net.add_edge(&format!("e{e}"), src, dst, slot, label.clone()).unwrap();
    };
    edge(&mut net, "a1", "c1", None, &nx);
    for k in 1..=cuts {
        edge(&mut net, &format!("a{k}"), &format!("k{k}"), None, &x);
        edge(&mut net, &format!("a{}", k + 1), &format!("k{k}"), None, &nx);
    }
    if len % 2 == 1 {
        edge(&mut net, &format!("a{axioms}"), "c2", None, &x);
    } else {
        net.add_link("t", LinkKind::Tensor).unwrap();
        edge(&mut net, &format!("a{}", axioms - 1), "t", Some(Slot::L), &x);
        edge(&mut net, &format!("a{axioms}"), "t", Some(Slot::R), &nx);
        edge(&mut net, &format!("a{axioms}"), "c3", None, &x);
        edge(&mut net, "t", "c2", None, &Formula::tensor(x.clone(), nx.clone()));
    }
    net
}

/// The generators of the first wire block of `wire_net(len)`, moved onto
/// `len` qubits.
pub fn compiled_wire_generators(len: usize) -> Result<Vec<Pauli>, MajoranaError> {
    let compiled = compile_net(&wire_net(len), &OrderingChoice::Linear)?;
    let report = wire_decomposition(&compiled.code, compiled.paths.as_deref().unwrap_or_default())?;
    let block = report.blocks[0].clone();
    assert_eq!(block.len, len);
    let range = block.start..block.start + block.len;
    Ok(compiled
        .code
        .generators
        .iter()
        .filter(|g| g.pauli.support().iter().all(|q| range.contains(q)))
        .map(|g| {
            let letters: Vec<(usize, char)> =
                g.pauli.support().iter().map(|&q| (q - block.start, g.pauli.letter(q))).collect();
            Pauli::from_letters(len, &letters).with_phase(g.pauli.phase())
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MajoranaReport {
    pub length: usize,
    /// `(j, S_j == X_jX_{j+1})`.
    pub stabilizers: Vec<(usize, bool)>,
    pub majoranas_self_adjoint: bool,
    pub majoranas_square_to_one: bool,
    /// Distinct eigenvalues of `H_MC` with multiplicities.
    pub spectrum: Vec<(f64, usize)>,
    pub ground_energy: f64,
    pub ground_degeneracy: usize,
    /// Fidelity of the ground space with the compiled wire codespace.
    pub wire_fidelity: f64,
    /// The hopping-plus-pairing form with `+1` hopping equals `H_MC`.
    pub hopping_plus_equal: bool,
    /// The same with `−1` hopping.
    pub hopping_minus_equal: bool,
}

impl MajoranaReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.stabilizers.iter().all(|s| s.1)
            && self.majoranas_self_adjoint
            && self.majoranas_square_to_one
            && self.wire_fidelity >= 1.0 - tol
    }
}

pub fn majorana_check(length: usize) -> Result<MajoranaReport, MajoranaError> {
    if length < 2 {
        return Err(MajoranaError::TooShort(2));
    }
    let chain = Chain::new(length)?;
    let stabs = chain_stabilizers(&chain)?;
    let stabilizers = stabs
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let xx = Pauli::from_letters(length, &[(k, 'X'), (k + 1, 'X')]);
            Ok((k + 1, exactly_equal(s.matrix(), &xx.dense_matrix(length)?)))
        })
        .collect::<Result<Vec<_>, MajoranaError>>()?;
    let id = chain.space.identity();
    let mut adj = true;
    let mut sq = true;
    for k in 1..=2 * length {
        let g = gamma(&chain, k)?;
        adj &= exactly_equal(g.matrix(), g.adjoint().matrix());
        sq &= exactly_equal((&g * &g).matrix(), id.matrix());
    }
    let h = chain_hamiltonian(&chain)?;
    let (values, _) = hermitian_eigen(h.matrix());
    let spectrum = group_eigenvalues(&values, EIGEN_GAP);
    let (ground_energy, ground) = ground_space(h.matrix());
    let wire = codespace_from_generators(length, &compiled_wire_generators(length)?, length)?;
    let eq = |t: f64| -> Result<bool, MajoranaError> {
        Ok(exactly_equal(hopping_pairing_hamiltonian(&chain, t)?.matrix(), h.matrix()))
    };
    Ok(MajoranaReport {
        length,
        stabilizers,
        majoranas_self_adjoint: adj,
        majoranas_square_to_one: sq,
        ground_degeneracy: ground.ncols(),
        spectrum,
        ground_energy,
        wire_fidelity: subspace_fidelity(&ground, &wire),
        hopping_plus_equal: eq(1.0)?,
        hopping_minus_equal: eq(-1.0)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;

    fn pauli(s: &str) -> CMatrix {
        s.parse::<Pauli>().unwrap().dense_matrix(8).unwrap()
    }

    #[test]
    fn single_site() {
        let chain = Chain::new(1).unwrap();
        let (g1, g2) = majorana_ops(&chain, 1).unwrap();
        assert!(exactly_equal(g1.matrix(), &pauli("X")));
        assert!(exactly_equal(g2.matrix(), &pauli("Y")));
        assert!(majorana_ops(&chain, 2).is_err());
        assert!(gamma(&chain, 3).is_err());
    }

    #[test]
    fn pair_bitflip() {
        let chain = Chain::new(2).unwrap();
        let s = &chain_stabilizers(&chain).unwrap()[0];
        for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            let v = chain.space().basis(&[a, b]);
            let w = chain.space().basis(&[1 - a, 1 - b]);
            assert_eq!(s.apply(&v).0, w.0);
        }
    }

    /// Both proof steps: γ_{2j+1}|ab⟩ = (−1)^a|ab̄⟩ and γ_{2j}|ab⟩ = i(−1)^a|āb⟩.
    #[test]
    fn majorana_action_on_pairs() {
        let chain = Chain::new(2).unwrap();
        let (g3, g2) = (gamma(&chain, 3).unwrap(), gamma(&chain, 2).unwrap());
        for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            let v = chain.space().basis(&[a, b]);
            let sign = if a == 1 { -1.0 } else { 1.0 };
            assert_eq!(g3.apply(&v).0, chain.space().basis(&[a, 1 - b]).0 * c(sign, 0.0));
            assert_eq!(g2.apply(&v).0, chain.space().basis(&[1 - a, b]).0 * c(0.0, sign));
        }
    }

    #[test]
    fn three_sites() {
        let r = majorana_check(3).unwrap();
        assert!(r.passed(1e-9), "{r:?}");
        assert!((r.ground_energy + 2.0).abs() < 1e-9);
        assert_eq!(r.ground_degeneracy, 2);
    }

    #[test]
    fn stabilizers_and_ground_spaces() {
        for l in 2..=5 {
            let r = majorana_check(l).unwrap();
            assert!(r.passed(1e-9), "{r:?}");
            assert_eq!(r.stabilizers.len(), l - 1);
            assert_eq!(r.ground_degeneracy, 2);
        }
    }

    /// With `+1` hopping the expanded form is `Σ Y_jY_{j+1}`, which shares the
    /// spectrum of `−Σ S_j` but is a different matrix; `−1` hopping gives
    /// `−Σ S_j` exactly.
    #[test]
    fn hopping_pairing_expansion() {
        for l in 2..=5 {
            let chain = Chain::new(l).unwrap();
            let plus = hopping_pairing_hamiltonian(&chain, 1.0).unwrap();
            let mut yy = CMatrix::zeros(1 << l, 1 << l);
            for j in 0..l - 1 {
                yy += Pauli::from_letters(l, &[(j, 'Y'), (j + 1, 'Y')]).dense_matrix(l).unwrap();
            }
            assert!(exactly_equal(plus.matrix(), &yy));
            let r = majorana_check(l).unwrap();
            assert!(!r.hopping_plus_equal);
            assert!(r.hopping_minus_equal);
        }
    }

    #[test]
    fn wire_nets_have_one_long_block() {
        for len in 1..=7 {
            let compiled = compile_net(&wire_net(len), &OrderingChoice::Linear).unwrap();
            let w = wire_decomposition(&compiled.code, compiled.paths.as_deref().unwrap()).unwrap();
            assert_eq!(w.blocks[0].len, len);
            assert_eq!(compiled_wire_generators(len).unwrap().len(), len - 1);
        }
        assert!(majorana_check(1).is_err());
    }
}
