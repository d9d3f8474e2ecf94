//! Compilation of a proof structure to its stabilizer code.
//!
//! Each qubit is one matched occurrence pair. An ordering places qubits on
//! fermion positions; every edge-atom between two non-conclusion links then
//! yields the edge operator `y(ψⱼ − yψⱼ*)(ψᵢ + yψᵢ*)` where `i`/`j` are the
//! positions of the source/target copies, written out as a Pauli string.

use serde::Serialize;
use thiserror::Error;

use crate::formula::Sign;
use crate::linalg::{
    c, check_dense, ground_space, group_eigenvalues, hermitian_eigen, orthonormalize, subspace_fidelity, CMatrix,
    DenseLimitExceeded, EIGEN_GAP,
};
use crate::net::{atom_pairings, persistent_paths, AtomPairing, NetError, Occ, PersistentPath, ProofStructure};
use crate::pauli::{make_group, Pauli, PauliError, StabilizerGroup};
use crate::sparse::SparseVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("not a proof net: {0}")]
    NotAProofNet(String),
    #[error("ordering is not linear: {0}")]
    NotLinear(String),
    #[error("ordering is not a permutation of the {0} qubits")]
    BadOrdering(usize),
    #[error("edge {0:?} ends at a conclusion link")]
    ConclusionEdge(String),
    #[error("stabilizer group rejected: {0}")]
    Group(#[from] PauliError),
    #[error(transparent)]
    Dense(#[from] DenseLimitExceeded),
    #[error("generator {0} is not a nearest-neighbour wire term")]
    MismatchedGenerators(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingKind {
    Linear,
    Declaration,
    Custom,
}

/// A placement of qubits on positions `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QubitOrdering {
    kind: OrderingKind,
    /// Qubit id at each position.
    order: Vec<usize>,
    #[serde(skip)]
    position: Vec<usize>,
}

impl QubitOrdering {
    pub fn new(kind: OrderingKind, order: Vec<usize>) -> Result<QubitOrdering, CompileError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (p, &q) in order.iter().enumerate() {
            if q >= n || position[q] != usize::MAX {
                return Err(CompileError::BadOrdering(n));
            }
            position[q] = p;
        }
        Ok(QubitOrdering { kind, order, position })
    }

    pub fn custom(order: Vec<usize>) -> Result<QubitOrdering, CompileError> {
        QubitOrdering::new(OrderingKind::Custom, order)
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, qubit: usize) -> usize {
        self.position[qubit]
    }

    pub fn qubit_at(&self, position: usize) -> usize {
        self.order[position]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// First edge-atom violating the linearity condition, if any:
    /// `y = +` needs `j = i − 1` and `y = −` needs `j = i + 1`.
    pub fn linearity_violation(&self, net: &ProofStructure, pairing: &AtomPairing) -> Option<String> {
        for (e, pos, sign) in internal_atoms(net) {
            let occ = Occ { edge: e, pos };
            let i = self.position(pairing.source_qubit(occ)) as isize;
            let j = self.position(pairing.target_qubit(occ).expect("internal")) as isize;
            let want = if sign == Sign::Pos { i - 1 } else { i + 1 };
            if j != want {
                return Some(format!("edge {} atom {}: i={}, j={}, y={}", net.edge(e).id, pos, i, j, sign.symbol()));
            }
        }
        None
    }

    pub fn is_linear(&self, net: &ProofStructure, pairing: &AtomPairing) -> bool {
        self.linearity_violation(net, pairing).is_none()
    }
}

/// Edge-atoms between two non-conclusion links, in edge declaration order.
pub fn internal_atoms(net: &ProofStructure) -> Vec<(usize, usize, Sign)> {
    let mut out = Vec::new();
    for e in 0..net.edge_count() {
        if net.is_internal(e) {
            for (pos, (_, sign)) in net.atoms(e).into_iter().enumerate() {
                out.push((e, pos, sign));
            }
        }
    }
    out
}

/// Each persistent path contributes its qubits as one consecutive block,
/// laid out from the positive end; blocks follow the canonical path order.
pub fn linear_ordering(
    net: &ProofStructure,
    pairing: &AtomPairing,
    paths: &[PersistentPath],
) -> Result<QubitOrdering, CompileError> {
    let order: Vec<usize> = paths.iter().flat_map(|p| p.qubits.iter().rev().copied()).collect();
    if order.len() != pairing.qubit_count() {
        return Err(CompileError::NotAProofNet(format!(
            "paths cover {} of {} qubits",
            order.len(),
            pairing.qubit_count()
        )));
    }
    let ord = QubitOrdering::new(OrderingKind::Linear, order)?;
    if let Some(v) = ord.linearity_violation(net, pairing) {
        return Err(CompileError::NotLinear(v));
    }
    Ok(ord)
}

/// Edges in file order, source copy before target copy.
pub fn declaration_ordering(net: &ProofStructure, pairing: &AtomPairing) -> QubitOrdering {
    let mut seen = vec![false; pairing.qubit_count()];
    let mut order = Vec::with_capacity(seen.len());
    for e in 0..net.edge_count() {
        for pos in 0..net.edge(e).label.atom_count() {
            let occ = Occ { edge: e, pos };
            for q in [Some(pairing.source_qubit(occ)), pairing.target_qubit(occ)].into_iter().flatten() {
                if !seen[q] {
                    seen[q] = true;
                    order.push(q);
                }
            }
        }
    }
    QubitOrdering::new(OrderingKind::Declaration, order).expect("every qubit has an occurrence")
}

/// The edge operator for source position `i`, target position `j`
/// (0-based) and atom sign `y`, as the Pauli string the Jordan-Wigner
/// dictionary assigns to `y(ψⱼ − yψⱼ*)(ψᵢ + yψᵢ*)`.
pub fn edge_operator_at(n: usize, i: usize, j: usize, y: Sign) -> Pauli {
    assert!(i != j && i < n && j < n);
    let x = |q| Pauli::single(n, q, 'X');
    let zs = |lo: usize, hi: usize| (lo..=hi).fold(Pauli::identity(n), |p, q| &p * &Pauli::single(n, q, 'Z'));
    let zs_open = |lo: usize, hi: usize| if hi <= lo + 1 { Pauli::identity(n) } else { zs(lo + 1, hi - 1) };
    match (y, j < i) {
        (Sign::Pos, true) => &(&x(j) * &zs_open(j, i)) * &x(i),
        (Sign::Pos, false) => &(&x(i) * &zs(i, j)) * &x(j),
        (Sign::Neg, false) => &(&x(i) * &zs_open(i, j)) * &x(j),
        (Sign::Neg, true) => &(&x(j) * &zs(j, i)) * &x(i),
    }
}

pub fn edge_operator(
    net: &ProofStructure,
    pairing: &AtomPairing,
    ordering: &QubitOrdering,
    edge: usize,
    pos: usize,
) -> Result<Pauli, CompileError> {
    if !net.is_internal(edge) {
        return Err(CompileError::ConclusionEdge(net.edge(edge).id.clone()));
    }
    let occ = Occ { edge, pos };
    let i = ordering.position(pairing.source_qubit(occ));
    let j = ordering.position(pairing.target_qubit(occ).expect("internal edge"));
    let y = net.atoms(edge)[pos].1;
    Ok(edge_operator_at(ordering.len(), i, j, y))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub edge: usize,
    pub pos: usize,
    pub sign: Sign,
    /// Positions of the source and target copies.
    pub i: usize,
    pub j: usize,
    pub pauli: Pauli,
}

#[derive(Clone, Debug)]
pub struct CompiledCode {
    pub n: usize,
    pub ordering: QubitOrdering,
    pub generators: Vec<Generator>,
    pub group: StabilizerGroup,
}

impl CompiledCode {
    pub fn paulis(&self) -> Vec<Pauli> {
        self.generators.iter().map(|g| g.pauli.clone()).collect()
    }

    /// Index of the generator for `(edge, pos)`.
    pub fn generator_index(&self, edge: usize, pos: usize) -> Option<usize> {
        self.generators.iter().position(|g| g.edge == edge && g.pos == pos)
    }

    pub fn codespace_dimension(&self) -> u128 {
        self.group.codespace_dimension()
    }
}

pub fn compile(net: &ProofStructure, pairing: &AtomPairing, ordering: QubitOrdering) -> Result<CompiledCode, CompileError> {
    let n = pairing.qubit_count();
    if ordering.len() != n {
        return Err(CompileError::BadOrdering(n));
    }
    let mut generators = Vec::new();
    for (e, pos, sign) in internal_atoms(net) {
        let occ = Occ { edge: e, pos };
        let i = ordering.position(pairing.source_qubit(occ));
        let j = ordering.position(pairing.target_qubit(occ).expect("internal"));
        generators.push(Generator {
            edge: e,
            pos,
            sign,
            i,
            j,
            pauli: edge_operator_at(n, i, j, sign),
        });
    }
    let group = make_group(n, generators.iter().map(|g| g.pauli.clone()).collect())?;
    Ok(CompiledCode {
        n,
        ordering,
        generators,
        group,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderingChoice {
    /// Linear if the structure passes the path criterion, else declaration order.
    Auto,
    Linear,
    Declaration,
    Custom(Vec<usize>),
}

/// A structure together with everything derived on the way to its code.
#[derive(Clone, Debug)]
pub struct CompiledNet {
    pub net: ProofStructure,
    pub pairing: AtomPairing,
    pub paths: Option<Vec<PersistentPath>>,
    pub code: CompiledCode,
}

pub fn compile_net(net: &ProofStructure, choice: &OrderingChoice) -> Result<CompiledNet, CompileError> {
    let pairing = atom_pairings(net)?;
    let paths = persistent_paths(net, &pairing);
    let ordering = match (choice, &paths) {
        (OrderingChoice::Linear | OrderingChoice::Auto, Ok(p)) => linear_ordering(net, &pairing, p)?,
        (OrderingChoice::Linear, Err(e)) => return Err(CompileError::NotAProofNet(e.to_string())),
        (OrderingChoice::Auto | OrderingChoice::Declaration, _) => declaration_ordering(net, &pairing),
        (OrderingChoice::Custom(order), _) => QubitOrdering::custom(order.clone())?,
    };
    let code = compile(net, &pairing, ordering)?;
    Ok(CompiledNet {
        net: net.clone(),
        pairing,
        paths: paths.ok(),
        code,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WireBlock {
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WireReport {
    pub blocks: Vec<WireBlock>,
    /// `Σ (Nᵢ − 1)` over the paths.
    pub path_qubits: usize,
    pub n: usize,
}

/// Checks that the code is the tensor product of quantum wires, one per
/// persistent path: generators exactly `X_t X_{t+1}` inside each block.
pub fn wire_decomposition(code: &CompiledCode, paths: &[PersistentPath]) -> Result<WireReport, CompileError> {
    let path_qubits: usize = paths.iter().map(|p| p.len() - 1).sum();
    if path_qubits != code.n {
        return Err(CompileError::NotAProofNet(format!("Σ(N−1) = {path_qubits} but n = {}", code.n)));
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut expected: Vec<Pauli> = Vec::new();
    for p in paths {
        let len = p.len() - 1;
        for t in start..start + len.saturating_sub(1) {
            expected.push(Pauli::from_letters(code.n, &[(t, 'X'), (t + 1, 'X')]));
        }
        blocks.push(WireBlock { start, len });
        start += len;
    }
    let mut remaining = expected;
    for g in &code.generators {
        match remaining.iter().position(|e| *e == g.pauli) {
            Some(k) => {
                remaining.swap_remove(k);
            }
            None => return Err(CompileError::MismatchedGenerators(g.pauli.render())),
        }
    }
    if let Some(missing) = remaining.first() {
        return Err(CompileError::MismatchedGenerators(format!("missing {}", missing.render())));
    }
    Ok(WireReport {
        blocks,
        path_qubits,
        n: code.n,
    })
}

/// `H = −Σ Θ` over the generators.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    pub n: usize,
    pub terms: Vec<Pauli>,
}

pub fn hamiltonian(code: &CompiledCode) -> Hamiltonian {
    Hamiltonian {
        n: code.n,
        terms: code.paulis(),
    }
}

impl Hamiltonian {
    pub fn dense(&self, limit: usize) -> Result<CMatrix, CompileError> {
        check_dense(self.n, limit)?;
        let dim = 1usize << self.n;
        let mut h = CMatrix::zeros(dim, dim);
        for t in &self.terms {
            for b in 0..dim as u64 {
                let (k, out) = t.apply_index(b);
                h[(out as usize, b as usize)] -= crate::linalg::i_pow(k);
            }
        }
        Ok(h)
    }

    /// Sparse action on one column.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.terms
            .iter()
            .fold(SparseVec::zero(), |acc, t| acc.sub(&v.apply_pauli(t)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `(value, multiplicity)`, ascending.
    pub distinct: Vec<(f64, usize)>,
}

impl Spectrum {
    pub fn ground_energy(&self) -> f64 {
        self.distinct[0].0
    }

    pub fn ground_degeneracy(&self) -> usize {
        self.distinct[0].1
    }
}

pub fn spectrum(h: &Hamiltonian, limit: usize) -> Result<Spectrum, CompileError> {
    let (eigenvalues, _) = hermitian_eigen(&h.dense(limit)?);
    let distinct = group_eigenvalues(&eigenvalues, EIGEN_GAP);
    Ok(Spectrum { eigenvalues, distinct })
}

/// Orthonormal basis of the joint +1 eigenspace, from the projector
/// `∏(1 + g)/2` applied to every basis vector.
pub fn codespace_basis(code: &CompiledCode, limit: usize) -> Result<CMatrix, CompileError> {
    codespace_from_generators(code.n, &code.paulis(), limit)
}

pub fn codespace_from_generators(n: usize, gens: &[Pauli], limit: usize) -> Result<CMatrix, CompileError> {
    check_dense(n, limit)?;
    let dim = 1usize << n;
    let cols: Vec<_> = (0..dim as u64)
        .map(|b| SparseVec::basis(b).project(gens))
        .filter(|v| !v.is_empty())
        .map(|v| v.to_dense(dim))
        .collect();
    if cols.is_empty() {
        return Ok(CMatrix::zeros(dim, 0));
    }
    Ok(orthonormalize(&CMatrix::from_columns(&cols), 1e-9))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodespaceReport {
    pub n: usize,
    pub rank: usize,
    pub dimension_from_rank: u128,
    pub dimension_from_projector: usize,
    pub ground_energy: f64,
    pub ground_degeneracy: usize,
    /// Fidelity between the ground space of H and the projector codespace.
    pub ground_fidelity: f64,
}

impl CodespaceReport {
    pub fn consistent(&self, tol: f64) -> bool {
        self.dimension_from_rank == self.dimension_from_projector as u128
            && self.ground_degeneracy == self.dimension_from_projector
            && self.ground_fidelity >= 1.0 - tol
    }
}

/// Compares the projector codespace with the ground space of `H`.
pub fn codespace_report(code: &CompiledCode, limit: usize) -> Result<(CodespaceReport, CMatrix), CompileError> {
    let basis = codespace_basis(code, limit)?;
    let (ground_energy, ground) = ground_space(&hamiltonian(code).dense(limit)?);
    let report = CodespaceReport {
        n: code.n,
        rank: code.group.independent_rank(),
        dimension_from_rank: code.codespace_dimension(),
        dimension_from_projector: basis.ncols(),
        ground_energy,
        ground_degeneracy: ground.ncols(),
        ground_fidelity: subspace_fidelity(&basis, &ground),
    };
    Ok((report, basis))
}

/// Image of basis state `idx` under the signed permutation carrying the
/// Hilbert space of ordering `a` to that of ordering `b`: a wedge of occupied
/// qubits written in `a`'s order is re-sorted into `b`'s order, with the sign
/// of that permutation.
pub fn transport_index(a: &QubitOrdering, b: &QubitOrdering, idx: u64) -> (u64, f64) {
    let n = a.len();
    let targets: Vec<usize> = (0..n)
        .filter(|&p| idx >> (n - 1 - p) & 1 == 1)
        .map(|p| b.position(a.qubit_at(p)))
        .collect();
    let mut inversions = 0;
    for x in 0..targets.len() {
        for y in x + 1..targets.len() {
            if targets[x] > targets[y] {
                inversions += 1;
            }
        }
    }
    let out = targets.iter().fold(0u64, |acc, &p| acc | 1 << (n - 1 - p));
    (out, if inversions % 2 == 0 { 1.0 } else { -1.0 })
}

/// `transport_index` as a dense matrix.
pub fn ordering_transform(a: &QubitOrdering, b: &QubitOrdering, limit: usize) -> Result<CMatrix, CompileError> {
    let n = a.len();
    if b.len() != n {
        return Err(CompileError::BadOrdering(n));
    }
    check_dense(n, limit)?;
    let dim = 1usize << n;
    let mut m = CMatrix::zeros(dim, dim);
    for idx in 0..dim {
        let (out, sign) = transport_index(a, b, idx as u64);
        m[(out as usize, idx)] = c(sign, 0.0);
    }
    Ok(m)
}
