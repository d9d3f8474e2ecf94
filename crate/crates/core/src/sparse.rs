//! Sparse state vectors over a qubit register, used where dense matrices of
//! the full space would be wasteful (correction maps, projectors).

use num_complex::Complex64;

use crate::linalg::{i_pow, CVector};
use crate::pauli::Pauli;

const ZERO_CUTOFF: f64 = 1e-15;

/// Entries sorted by basis index, no duplicates, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseVec {
    entries: Vec<(u64, Complex64)>,
}

impl SparseVec {
    pub fn zero() -> SparseVec {
        SparseVec::default()
    }

    pub fn basis(index: u64) -> SparseVec {
        SparseVec {
            entries: vec![(index, Complex64::new(1.0, 0.0))],
        }
    }

    /// Builds from unsorted entries, summing repeated indices.
    pub fn from_entries(mut entries: Vec<(u64, Complex64)>) -> SparseVec {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(u64, Complex64)> = Vec::with_capacity(entries.len());
        for (i, a) in entries {
            match out.last_mut() {
                Some((j, b)) if *j == i => *b += a,
                _ => out.push((i, a)),
            }
        }
        out.retain(|(_, a)| a.norm() > ZERO_CUTOFF);
        SparseVec { entries: out }
    }

    pub fn entries(&self) -> &[(u64, Complex64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: u64) -> Complex64 {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(k) => self.entries[k].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn scale(&self, s: Complex64) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|&(i, a)| (i, a * s)).collect())
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut all = self.entries.clone();
        all.extend_from_slice(&other.entries);
        SparseVec::from_entries(all)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, (_, a)| acc + a.norm_sqr()).sqrt()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn dot(&self, other: &SparseVec) -> Complex64 {
        let (mut i, mut j) = (0, 0);
        let mut s = Complex64::new(0.0, 0.0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, b) = (self.entries[i], other.entries[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    s += a.1.conj() * b.1;
                    i += 1;
                    j += 1;
                }
            }
        }
        s
    }

    pub fn apply_pauli(&self, p: &Pauli) -> SparseVec {
        let mut out: Vec<(u64, Complex64)> = self
            .entries
            .iter()
            .map(|&(b, a)| {
                let (k, nb) = p.apply_index(b);
                (nb, a * i_pow(k))
            })
            .collect();
        out.sort_by_key(|e| e.0);
        SparseVec { entries: out }
    }

    /// `∏ (1 + g)/2` over the given commuting generators.
    pub fn project(&self, gens: &[Pauli]) -> SparseVec {
        gens.iter().fold(self.clone(), |v, g| {
            v.add(&v.apply_pauli(g)).scale(Complex64::new(0.5, 0.0))
        })
    }

    pub fn to_dense(&self, dim: usize) -> CVector {
        let mut v = CVector::zeros(dim);
        for &(i, a) in &self.entries {
            v[i as usize] = a;
        }
        v
    }
}

/// Orthonormal basis of the joint +1 eigenspace of commuting generators,
/// grown by projecting basis vectors in index order. Stops early once
/// `max` vectors are found.
pub fn codespace(n: usize, gens: &[Pauli], max: Option<usize>) -> Vec<SparseVec> {
    let mut basis: Vec<SparseVec> = Vec::new();
    for b in 0..1u64 << n {
        if max.is_some_and(|m| basis.len() >= m) {
            break;
        }
        let mut v = SparseVec::basis(b).project(gens);
        for _ in 0..2 {
            for u in &basis {
                v = v.sub(&u.scale(u.dot(&v)));
            }
        }
        let norm = v.norm();
        if norm > 1e-9 {
            basis.push(v.scale(Complex64::new(1.0 / norm, 0.0)));
        }
    }
    basis
}

/// `‖A†B‖²_F / max(dim A, dim B)` for orthonormal sets.
pub fn span_fidelity(a: &[SparseVec], b: &[SparseVec]) -> f64 {
    let d = a.len().max(b.len());
    if d == 0 {
        return 1.0;
    }
    let s: f64 = a.iter().flat_map(|u| b.iter().map(move |v| u.dot(v).norm_sqr())).sum();
    s / d as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn arithmetic() {
        let a = SparseVec::from_entries(vec![(3, c(1., 0.)), (1, c(0., 1.)), (3, c(1., 0.))]);
        assert_eq!(a.entries(), &[(1, c(0., 1.)), (3, c(2., 0.))]);
        assert!((a.norm() - 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(a.dot(&a), c(5., 0.));
        assert!(a.sub(&a).is_empty());
        assert_eq!(a.get(3), c(2., 0.));
        assert_eq!(a.get(2), c(0., 0.));
    }

    #[test]
    fn pauli_action_matches_dense() {
        let p: Pauli = "-iXYZ".parse().unwrap();
        let m = p.dense_matrix(3).unwrap();
        for b in 0..8u64 {
            let s = SparseVec::basis(b).apply_pauli(&p).to_dense(8);
            assert_eq!(s, m.column(b as usize).into_owned());
        }
    }

    #[test]
    fn projector_onto_bell_pair() {
        let gens: Vec<Pauli> = vec!["XX".parse().unwrap(), "ZZ".parse().unwrap()];
        let v = SparseVec::basis(0).project(&gens);
        assert_eq!(v.entries(), &[(0, c(0.5, 0.)), (3, c(0.5, 0.))]);
        assert!(SparseVec::basis(1).project(&gens).is_empty());
    }

    #[test]
    fn sparse_codespace_matches_dense() {
        let gens: Vec<Pauli> = vec!["XXI".parse().unwrap(), "IXX".parse().unwrap()];
        let basis = codespace(3, &gens, None);
        assert_eq!(basis.len(), 2);
        let dense = crate::compiler::codespace_from_generators(3, &gens, 3).unwrap();
        let cols: Vec<SparseVec> = (0..dense.ncols())
            .map(|j| SparseVec::from_entries((0..8).map(|r| (r as u64, dense[(r, j)])).collect()))
            .collect();
        assert!((span_fidelity(&basis, &cols) - 1.0).abs() < 1e-12);
        assert_eq!(codespace(3, &gens, Some(1)).len(), 1);
    }
}
