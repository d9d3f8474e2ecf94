//! Corrections between stabilizer codes.
//!
//! A correction from the code of `π′` to the code of `π` is an isometry
//! `T : H_π′ → H_π` with a split `G_π = C ⊔ D` and a bijection `ν : D → G_π′`
//! such that `T` lands in the `+1` eigenspace of every `c ∈ C` and
//! `g T = T ν(g)` for `g ∈ D`. A reduction step yields one; corrections for
//! consecutive steps compose.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::compiler::{linear_ordering, transport_index, CompiledNet, Hamiltonian};
use crate::linalg::{c, check_dense, CMatrix, DenseLimitExceeded};
use crate::net::{Occ, Redex, Reduction, Slot};
use crate::pauli::{gf2_rank, same_span, Pauli};
use crate::sparse::{codespace, span_fidelity, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrectionError {
    #[error("reduction does not match the compiled structures: {0}")]
    Mismatch(String),
    #[error("cannot compose: {0}")]
    Interface(String),
    #[error(transparent)]
    Dense(#[from] DenseLimitExceeded),
}

/// Column-sparse linear map between qubit registers.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseIsometry {
    /// Qubits of the codomain.
    pub rows: usize,
    /// Qubits of the domain.
    pub cols: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseIsometry {
    pub fn identity(n: usize) -> SparseIsometry {
        SparseIsometry {
            rows: n,
            cols: n,
            columns: (0..1u64 << n).map(SparseVec::basis).collect(),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut all = Vec::new();
        for &(k, x) in v.entries() {
            all.extend(self.columns[k as usize].entries().iter().map(|&(r, y)| (r, x * y)));
        }
        SparseVec::from_entries(all)
    }

    /// `T† v`.
    pub fn apply_adjoint(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_entries(
            self.columns
                .iter()
                .enumerate()
                .map(|(b, col)| (b as u64, col.dot(v)))
                .collect(),
        )
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SparseIsometry) -> Result<SparseIsometry, CorrectionError> {
        if inner.rows != self.cols {
            return Err(CorrectionError::Interface(format!(
                "inner map lands in {} qubits, outer expects {}",
                inner.rows, self.cols
            )));
        }
        Ok(SparseIsometry {
            rows: self.rows,
            cols: inner.cols,
            columns: inner.columns.iter().map(|v| self.apply(v)).collect(),
        })
    }

    /// `max |T†T − I|`, accumulated row by row.
    pub fn gram_deviation(&self) -> f64 {
        let mut by_row: std::collections::BTreeMap<u64, Vec<(usize, Complex64)>> = Default::default();
        for (b, col) in self.columns.iter().enumerate() {
            for &(r, x) in col.entries() {
                by_row.entry(r).or_default().push((b, x));
            }
        }
        let mut gram: std::collections::HashMap<(usize, usize), Complex64> = Default::default();
        for row in by_row.values() {
            for &(a, x) in row {
                for &(b, y) in row {
                    *gram.entry((a, b)).or_default() += x.conj() * y;
                }
            }
        }
        let mut dev: f64 = 0.0;
        for b in 0..self.columns.len() {
            if !gram.contains_key(&(b, b)) {
                dev = dev.max(1.0);
            }
        }
        for (&(a, b), &g) in &gram {
            let want = if a == b { c(1.0, 0.0) } else { c(0.0, 0.0) };
            dev = dev.max((g - want).norm());
        }
        dev
    }

    pub fn to_dense(&self, limit: usize) -> Result<CMatrix, CorrectionError> {
        check_dense(self.rows, limit)?;
        let mut m = CMatrix::zeros(1 << self.rows, self.columns.len());
        for (b, col) in self.columns.iter().enumerate() {
            for &(r, x) in col.entries() {
                m[(r as usize, b)] = x;
            }
        }
        Ok(m)
    }
}

/// A correction `T : H_π′ → H_π` with its generator bookkeeping. Generator
/// sets are index lists into `source_generators` (of `π`) and
/// `target_generators` (of `π′`).
#[derive(Clone, Debug)]
pub struct Correction {
    pub isometry: SparseIsometry,
    pub source_generators: Vec<Pauli>,
    pub source_labels: Vec<String>,
    pub target_generators: Vec<Pauli>,
    pub target_labels: Vec<String>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    /// `nu[k]` is the image of `d[k]`.
    pub nu: Vec<usize>,
}

fn labels(cn: &CompiledNet) -> Vec<String> {
    cn.code
        .generators
        .iter()
        .map(|g| format!("{}/{}", cn.net.edge(g.edge).id, g.pos))
        .collect()
}

/// The three-qubit block for one expanded qubit: amplitude `1/2` on each
/// string of parity `j`.
const BLOCK: [[u8; 4]; 2] = [[0b000, 0b011, 0b101, 0b110], [0b001, 0b010, 0b100, 0b111]];

/// The correction for one reduction step. `before` and `after` are the
/// compiled forms of `reduction.before` and `reduction.after`. The map is
/// built on the linear orderings and carried to the compiled ones by the
/// signed permutations relating the two registers.
pub fn reduction_correction(
    reduction: &Reduction,
    before: &CompiledNet,
    after: &CompiledNet,
) -> Result<Correction, CorrectionError> {
    let mismatch = |m: String| CorrectionError::Mismatch(m);
    if before.net != reduction.before || after.net != reduction.after {
        return Err(mismatch("structures differ from the reduction".into()));
    }
    let (pi, pj) = (&before.net, &after.net);
    let ei = |id: &str| pi.edge_index(id).ok_or_else(|| mismatch(format!("no edge {id:?}")));
    let li = |id: &str| pi.link_index(id).ok_or_else(|| mismatch(format!("no link {id:?}")));

    // (π′ qubit, π qubits of its block)
    let mut blocks: Vec<(usize, [usize; 3])> = Vec::new();
    let c_edges: Vec<usize>;
    match &reduction.redex {
        Redex::Axiom {
            axiom_edge,
            other_edge,
            outer_edge,
            ..
        } => {
            let (e_ax, e_l, outer) = (ei(axiom_edge)?, ei(other_edge)?, ei(outer_edge)?);
            let spliced = pj.edge_index(other_edge).ok_or_else(|| mismatch(format!("no edge {other_edge:?}")))?;
            for k in 0..pi.edge(e_l).label.atom_count() {
                let at = |e, pos| Occ { edge: e, pos };
                let cut_q = before.pairing.target_qubit(at(e_l, k)).expect("cut premiss");
                blocks.push((
                    after.pairing.source_qubit(at(spliced, k)),
                    [before.pairing.source_qubit(at(e_l, k)), cut_q, before.pairing.source_qubit(at(outer, k))],
                ));
            }
            c_edges = vec![e_ax, e_l];
        }
        Redex::Multiplicative {
            cut,
            tensor,
            par,
            tensor_edge,
            par_edge,
        } => {
            let (t, p, k_link) = (li(tensor)?, li(par)?, li(cut)?);
            let mut offset = 0;
            for slot in [Slot::L, Slot::R] {
                let prem = pi.premiss_at(t, slot).ok_or_else(|| mismatch(format!("{tensor} lacks a premiss")))?;
                let moved = pj
                    .edge_index(&pi.edge(prem).id)
                    .ok_or_else(|| mismatch(format!("premiss {:?} vanished", pi.edge(prem).id)))?;
                let new_cut = pj.edge(moved).target;
                for k in 0..pi.edge(prem).label.atom_count() {
                    let q = |l, i| before.pairing.qubit_at(l, i).expect("link qubit");
                    blocks.push((
                        after.pairing.qubit_at(new_cut, k).expect("new cut qubit"),
                        [q(t, offset + k), q(k_link, offset + k), q(p, offset + k)],
                    ));
                }
                offset += pi.edge(prem).label.atom_count();
            }
            c_edges = vec![ei(tensor_edge)?, ei(par_edge)?];
        }
    }

    // every other π′ qubit carries over by (link id, index)
    let mut direct: Vec<(usize, usize)> = Vec::new();
    let mut covered = vec![false; before.pairing.qubit_count()];
    for (_, b) in &blocks {
        for &q in b {
            covered[q] = true;
        }
    }
    for q in &after.pairing.qubits {
        if blocks.iter().any(|(e, _)| *e == q.id) {
            continue;
        }
        let l = li(&pj.link(q.link).id)?;
        let target = before
            .pairing
            .qubit_at(l, q.index)
            .ok_or_else(|| mismatch(format!("qubit {} of {:?} has no counterpart", q.index, pj.link(q.link).id)))?;
        if covered[target] {
            return Err(mismatch(format!("qubit {target} covered twice")));
        }
        covered[target] = true;
        direct.push((q.id, target));
    }
    if covered.iter().any(|c| !c) {
        return Err(mismatch("some qubits of the redex have no preimage".into()));
    }

    let linear = |cn: &CompiledNet| {
        let paths = cn.paths.as_ref().ok_or_else(|| mismatch("cyclic persistent class".into()))?;
        linear_ordering(&cn.net, &cn.pairing, paths).map_err(|e| mismatch(e.to_string()))
    };
    let (lin_pi, lin_pj) = (linear(before)?, linear(after)?);
    let (n, m) = (before.code.n, after.code.n);
    let bit_pi = |q: usize| 1u64 << (n - 1 - lin_pi.position(q));
    let bit_at = |b: u64, q: usize| (b >> (m - 1 - lin_pj.position(q))) & 1;
    let amp = c(0.5f64.powi(blocks.len() as i32), 0.0);
    let columns = (0..1u64 << m)
        .map(|b| {
            let base = direct.iter().filter(|&&(q, _)| bit_at(b, q) == 1).fold(0, |acc, &(_, t)| acc | bit_pi(t));
            let mut entries = vec![(base, amp)];
            for (q, qs) in &blocks {
                let strings = BLOCK[bit_at(b, *q) as usize];
                entries = entries
                    .iter()
                    .flat_map(|&(idx, a)| {
                        strings.iter().map(move |s| {
                            let mut out = idx;
                            for (t, &qq) in qs.iter().enumerate() {
                                if (s >> (2 - t)) & 1 == 1 {
                                    out |= bit_pi(qq);
                                }
                            }
                            (out, a)
                        })
                    })
                    .collect();
            }
            SparseVec::from_entries(entries)
        })
        .collect::<Vec<_>>();
    let columns = if lin_pi == before.code.ordering && lin_pj == after.code.ordering {
        columns
    } else {
        (0..1u64 << m)
            .map(|b| {
                let (k, sign) = transport_index(&after.code.ordering, &lin_pj, b);
                SparseVec::from_entries(
                    columns[k as usize]
                        .entries()
                        .iter()
                        .map(|&(r, x)| {
                            let (out, s2) = transport_index(&lin_pi, &before.code.ordering, r);
                            (out, x * (sign * s2))
                        })
                        .collect(),
                )
            })
            .collect()
    };

    let (mut cs, mut ds, mut nu) = (Vec::new(), Vec::new(), Vec::new());
    for (gi, g) in before.code.generators.iter().enumerate() {
        if c_edges.contains(&g.edge) {
            cs.push(gi);
            continue;
        }
        let e = reduction.edge_map[g.edge]
            .ok_or_else(|| mismatch(format!("edge {:?} has no image", pi.edge(g.edge).id)))?;
        let image = after
            .code
            .generator_index(e, g.pos)
            .ok_or_else(|| mismatch(format!("no generator for {:?}/{}", pj.edge(e).id, g.pos)))?;
        ds.push(gi);
        nu.push(image);
    }
    Ok(Correction {
        isometry: SparseIsometry {
            rows: n,
            cols: m,
            columns,
        },
        source_generators: before.code.paulis(),
        source_labels: labels(before),
        target_generators: after.code.paulis(),
        target_labels: labels(after),
        c: cs,
        d: ds,
        nu,
    })
}

impl Correction {
    /// `T = I`, `C = ∅`, `ν = id`.
    pub fn identity(code: &CompiledNet) -> Correction {
        let k = code.code.generators.len();
        Correction {
            isometry: SparseIsometry::identity(code.code.n),
            source_generators: code.code.paulis(),
            source_labels: labels(code),
            target_generators: code.code.paulis(),
            target_labels: labels(code),
            c: Vec::new(),
            d: (0..k).collect(),
            nu: (0..k).collect(),
        }
    }

    pub fn c_paulis(&self) -> Vec<Pauli> {
        self.c.iter().map(|&i| self.source_generators[i].clone()).collect()
    }

    /// `self` (for `π′ → π`) after `inner` (for `π″ → π′`):
    /// `C = C₁ ∪ ν₁⁻¹(C₂)`, `D = ν₁⁻¹(D₂)`, `ν = ν₂ ∘ ν₁`.
    pub fn compose(&self, inner: &Correction) -> Result<Correction, CorrectionError> {
        if self.target_generators != inner.source_generators {
            return Err(CorrectionError::Interface(
                "generators of the middle code differ between the two corrections".into(),
            ));
        }
        let isometry = self.isometry.compose(&inner.isometry)?;
        let preimage = |g2: usize| self.nu.iter().position(|&x| x == g2).map(|k| self.d[k]);
        let mut c = self.c.clone();
        for &g2 in &inner.c {
            c.push(preimage(g2).ok_or_else(|| CorrectionError::Interface(format!("ν misses generator {g2}")))?);
        }
        c.sort_unstable();
        let (mut d, mut nu) = (Vec::new(), Vec::new());
        for (k, &g2) in inner.d.iter().enumerate() {
            d.push(preimage(g2).ok_or_else(|| CorrectionError::Interface(format!("ν misses generator {g2}")))?);
            nu.push(inner.nu[k]);
        }
        Ok(Correction {
            isometry,
            source_generators: self.source_generators.clone(),
            source_labels: self.source_labels.clone(),
            target_generators: inner.target_generators.clone(),
            target_labels: inner.target_labels.clone(),
            c,
            d,
            nu,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrectionReport {
    pub tolerance: f64,
    /// `max |T†T − I|`.
    pub isometry_deviation: f64,
    /// `max_b ‖c T b − T b‖` over `c ∈ C`.
    pub invariance_deviation: f64,
    /// `Tr ∏_{c∈C} (1 + c)/2`.
    pub invariant_dimension: f64,
    pub expected_dimension: u64,
    /// `max_b ‖g T b − T ν(g) b‖` over `g ∈ D`.
    pub intertwine_deviation: f64,
    pub nu_bijective: bool,
    pub c_size: usize,
    pub d_size: usize,
}

impl CorrectionReport {
    pub fn isometry_ok(&self) -> bool {
        self.isometry_deviation <= self.tolerance
    }

    pub fn invariance_ok(&self) -> bool {
        self.invariance_deviation <= self.tolerance
    }

    pub fn dimension_ok(&self) -> bool {
        (self.invariant_dimension - self.expected_dimension as f64).abs() <= self.tolerance
    }

    pub fn intertwine_ok(&self) -> bool {
        self.intertwine_deviation <= self.tolerance
    }

    pub fn passed(&self) -> bool {
        self.isometry_ok() && self.invariance_ok() && self.dimension_ok() && self.intertwine_ok() && self.nu_bijective
    }
}

pub fn verify_correction(corr: &Correction, tolerance: f64) -> CorrectionReport {
    let t = &corr.isometry;
    let cs = corr.c_paulis();
    let mut invariance: f64 = 0.0;
    let mut intertwine: f64 = 0.0;
    for (b, col) in t.columns.iter().enumerate() {
        for g in &cs {
            invariance = invariance.max(col.apply_pauli(g).sub(col).norm());
        }
        for (k, &gi) in corr.d.iter().enumerate() {
            let lhs = col.apply_pauli(&corr.source_generators[gi]);
            let rhs = t.apply(&SparseVec::basis(b as u64).apply_pauli(&corr.target_generators[corr.nu[k]]));
            intertwine = intertwine.max(lhs.sub(&rhs).norm());
        }
    }
    let trace: f64 = (0..1u64 << t.rows)
        .map(|b| SparseVec::basis(b).project(&cs).get(b).re)
        .sum();
    let mut hit = vec![false; corr.target_generators.len()];
    let mut injective = true;
    for &g in &corr.nu {
        injective &= !std::mem::replace(&mut hit[g], true);
    }
    CorrectionReport {
        tolerance,
        isometry_deviation: t.gram_deviation(),
        invariance_deviation: invariance,
        invariant_dimension: trace,
        expected_dimension: 1u64 << t.cols,
        intertwine_deviation: intertwine,
        nu_bijective: injective && hit.iter().all(|&h| h) && corr.d.len() == corr.nu.len(),
        c_size: cs.len(),
        d_size: corr.d.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HamiltonianShift {
    /// `−|C|`.
    pub shift: f64,
    /// `max_b ‖(H_π T − T H_π′ − shift·T) b‖`.
    pub deviation: f64,
    /// The same without the shift term.
    pub unshifted_deviation: f64,
}

pub fn hamiltonian_shift(corr: &Correction) -> HamiltonianShift {
    let h = Hamiltonian {
        n: corr.isometry.rows,
        terms: corr.source_generators.clone(),
    };
    let h2 = Hamiltonian {
        n: corr.isometry.cols,
        terms: corr.target_generators.clone(),
    };
    let shift = -(corr.c.len() as f64);
    let (mut dev, mut raw): (f64, f64) = (0.0, 0.0);
    for (b, col) in corr.isometry.columns.iter().enumerate() {
        let diff = h.apply(col).sub(&corr.isometry.apply(&h2.apply(&SparseVec::basis(b as u64))));
        raw = raw.max(diff.norm());
        dev = dev.max(diff.sub(&col.scale(c(shift, 0.0))).norm());
    }
    HamiltonianShift {
        shift,
        deviation: dev,
        unshifted_deviation: raw,
    }
}

/// Checks on a composite correction against the codes at both ends.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositeReport {
    /// `C ∪ D` spans the source group and `ν(D)` the target group.
    pub spans_agree: bool,
    /// `‖T v − T₀T₀†T v‖` maximised over columns: the image sits inside the
    /// image of the first step.
    pub nested_image_deviation: f64,
    /// Fidelity of `T(Code π″)` with `Code π`.
    pub code_fidelity: f64,
}

pub fn composite_report(composite: &Correction, first: &Correction) -> CompositeReport {
    let src = |i: &usize| composite.source_generators[*i].clone();
    let all: Vec<Pauli> = composite.c.iter().chain(&composite.d).map(src).collect();
    let images: Vec<Pauli> = composite.nu.iter().map(|&i| composite.target_generators[i].clone()).collect();
    let spans_agree =
        same_span(&all, &composite.source_generators) && same_span(&images, &composite.target_generators);
    let t0 = &first.isometry;
    let nested = composite
        .isometry
        .columns
        .iter()
        .map(|v| v.sub(&t0.apply(&t0.apply_adjoint(v))).norm())
        .fold(0.0, f64::max);
    CompositeReport {
        spans_agree,
        nested_image_deviation: nested,
        code_fidelity: code_fidelity(composite),
    }
}

/// Fidelity between `T` applied to the target codespace and the source
/// codespace, both built sparsely.
pub fn code_fidelity(corr: &Correction) -> f64 {
    let far = codespace(corr.isometry.cols, &corr.target_generators, None);
    let mapped: Vec<SparseVec> = far.iter().map(|v| corr.isometry.apply(v)).collect();
    let n = corr.isometry.rows;
    let dim = 1usize << (n - gf2_rank(&corr.source_generators));
    let near = codespace(n, &corr.source_generators, Some(dim));
    span_fidelity(&near, &mapped)
}

#[cfg(test)]
mod tests;
