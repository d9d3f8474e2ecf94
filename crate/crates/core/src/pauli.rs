//! Exact Pauli-group arithmetic and stabilizer groups.
//!
//! An element is `i^k · X^x Z^z`, the X and Z factors written qubit by qubit
//! with X to the left of Z. `Y = i·X·Z`, so a stored qubit with both bits set
//! renders as `Y` with an extra `-i` folded into the phase.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{check_dense, i_pow, CMatrix, DenseLimitExceeded};

/// Fixed-length bit-vector, qubit `q` stored at bit `q % 64` of word `q / 64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Bits {
        Bits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, q: usize) -> bool {
        assert!(q < self.len, "bit {q} out of range {}", self.len);
        self.words[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn set(&mut self, q: usize, v: bool) {
        assert!(q < self.len, "bit {q} out of range {}", self.len);
        let m = 1u64 << (q % 64);
        if v {
            self.words[q / 64] |= m;
        } else {
            self.words[q / 64] &= !m;
        }
    }

    pub fn flip(&mut self, q: usize) {
        let v = self.get(q);
        self.set(q, !v);
    }

    pub fn xor_assign(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_count(&self, other: &Bits) -> u32 {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum()
    }

    pub fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&q| self.get(q))
    }

    /// Basis-index mask: qubit 0 is the most significant of `len` bits.
    pub fn index_mask(&self) -> u64 {
        assert!(self.len <= 64);
        self.ones().fold(0u64, |m, q| m | 1 << (self.len - 1 - q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("qubit-count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("-1 lies in the generated group (via generator {0})")]
    MinusOneInGroup(usize),
    #[error("invalid Pauli string {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error(transparent)]
    Dense(#[from] DenseLimitExceeded),
}

/// `i^phase · ⊗_q X^{x_q} Z^{z_q}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pauli {
    phase: u8,
    x: Bits,
    z: Bits,
}

impl Pauli {
    pub fn identity(n: usize) -> Pauli {
        Pauli {
            phase: 0,
            x: Bits::zeros(n),
            z: Bits::zeros(n),
        }
    }

    /// Builds from raw parts; `phase` is taken mod 4.
    pub fn from_parts(phase: u8, x: Bits, z: Bits) -> Pauli {
        assert_eq!(x.len(), z.len());
        Pauli { phase: phase & 3, x, z }
    }

    /// A single-qubit factor placed at `q`.
    pub fn single(n: usize, q: usize, letter: char) -> Pauli {
        let mut p = Pauli::identity(n);
        p.set_letter(q, letter);
        p
    }

    /// Product of letters at distinct qubits, e.g. `&[(0, 'X'), (2, 'Z')]`.
    pub fn from_letters(n: usize, letters: &[(usize, char)]) -> Pauli {
        let mut p = Pauli::identity(n);
        for &(q, l) in letters {
            assert!(!p.x.get(q) && !p.z.get(q), "qubit {q} given twice");
            p.set_letter(q, l);
        }
        p
    }

    fn set_letter(&mut self, q: usize, letter: char) {
        match letter {
            'I' => {}
            'X' => self.x.set(q, true),
            'Z' => self.z.set(q, true),
            'Y' => {
                self.x.set(q, true);
                self.z.set(q, true);
                self.phase = (self.phase + 1) & 3;
            }
            _ => panic!("not a Pauli letter: {letter}"),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Exponent `k` of the stored `i^k` prefactor of `X^x Z^z`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn xbits(&self) -> &Bits {
        &self.x
    }

    pub fn zbits(&self) -> &Bits {
        &self.z
    }

    pub fn with_phase(mut self, k: u8) -> Pauli {
        self.phase = (self.phase + k) & 3;
        self
    }

    pub fn negated(self) -> Pauli {
        self.with_phase(2)
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.is_identity_up_to_phase()
    }

    pub fn weight(&self) -> usize {
        (0..self.n()).filter(|&q| self.x.get(q) || self.z.get(q)).count()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&q| self.x.get(q) || self.z.get(q)).collect()
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }

    fn y_count(&self) -> u32 {
        self.x.and_count(&self.z)
    }

    /// Phase exponent in the letter notation, i.e. `P = i^k ⊗ letters`.
    pub fn display_phase(&self) -> u8 {
        (self.phase + 4 - (self.y_count() % 4) as u8) & 3
    }

    pub fn mul(&self, other: &Pauli) -> Result<Pauli, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::QubitMismatch(self.n(), other.n()));
        }
        // Z^{z1} X^{x2} = (-1)^{|z1 & x2|} X^{x2} Z^{z1}
        let swaps = self.z.and_count(&other.x);
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let phase = (self.phase as u32 + other.phase as u32 + 2 * (swaps % 2)) as u8 & 3;
        Ok(Pauli { phase, x, z })
    }

    pub fn commutes(&self, other: &Pauli) -> Result<bool, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::QubitMismatch(self.n(), other.n()));
        }
        Ok((self.x.and_count(&other.z) + self.z.and_count(&other.x)) % 2 == 0)
    }

    pub fn adjoint(&self) -> Pauli {
        // (i^k X^x Z^z)† = i^{-k} Z^z X^x = i^{-k} (-1)^{|x&z|} X^x Z^z
        let k = (4 - self.phase) & 3;
        Pauli {
            phase: (k + 2 * (self.y_count() % 2) as u8) & 3,
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    pub fn inverse(&self) -> Pauli {
        // P · P† = I for every Pauli element, so the inverse is the adjoint
        self.adjoint()
    }

    pub fn is_hermitian(&self) -> bool {
        self.adjoint() == *self
    }

    /// `P²`, always `i^k · I` for some `k`.
    pub fn square(&self) -> Pauli {
        self.mul(self).expect("same size")
    }

    /// `P|b⟩ = i^k |b'⟩`, basis index `b` with qubit 0 most significant.
    pub fn apply_index(&self, b: u64) -> (u8, u64) {
        let xm = self.x.index_mask();
        let zm = self.z.index_mask();
        let sign = ((zm & b).count_ones() % 2) as u8 * 2;
        ((self.phase + sign) & 3, b ^ xm)
    }

    pub fn dense_matrix(&self, limit: usize) -> Result<CMatrix, PauliError> {
        check_dense(self.n(), limit)?;
        let dim = 1usize << self.n();
        let mut m = DMatrix::from_element(dim, dim, Complex64::from(0.0));
        for b in 0..dim as u64 {
            let (k, out) = self.apply_index(b);
            m[(out as usize, b as usize)] = i_pow(k);
        }
        Ok(m)
    }

    pub fn render(&self) -> String {
        let mut s = String::from(match self.display_phase() {
            0 => "",
            1 => "+i",
            2 => "-",
            _ => "-i",
        });
        s.extend((0..self.n()).map(|q| self.letter(q)));
        s
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Pauli {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl FromStr for Pauli {
    type Err = PauliError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (k, rest) = if let Some(r) = text.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = text.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = text.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = text.strip_prefix('-') {
            (2, r)
        } else {
            (0, text)
        };
        let n = rest.chars().count();
        let mut p = Pauli::identity(n);
        for (q, ch) in rest.chars().enumerate() {
            if !matches!(ch, 'I' | 'X' | 'Y' | 'Z') {
                return Err(PauliError::Parse {
                    text: text.into(),
                    reason: format!("unexpected letter '{ch}'"),
                });
            }
            p.set_letter(q, ch);
        }
        Ok(p.with_phase(k))
    }
}

impl Mul for &Pauli {
    type Output = Pauli;

    fn mul(self, rhs: &Pauli) -> Pauli {
        Pauli::mul(self, rhs).expect("qubit-count mismatch")
    }
}

/// GF(2) rank of the symplectic rows `(x | z)`.
pub fn gf2_rank(rows: &[Pauli]) -> usize {
    reduce_rows(rows).len()
}

/// True iff the two lists generate the same group up to phase.
pub fn same_span(a: &[Pauli], b: &[Pauli]) -> bool {
    let ra = gf2_rank(a);
    ra == gf2_rank(b) && {
        let mut both = a.to_vec();
        both.extend_from_slice(b);
        gf2_rank(&both) == ra
    }
}

fn symplectic_bits(p: &Pauli) -> Bits {
    let n = p.n();
    let mut b = Bits::zeros(2 * n);
    for q in p.x.ones() {
        b.set(q, true);
    }
    for q in p.z.ones() {
        b.set(n + q, true);
    }
    b
}

fn reduce_rows(rows: &[Pauli]) -> Vec<(usize, Bits)> {
    let mut basis: Vec<(usize, Bits)> = Vec::new();
    for p in rows {
        let mut r = symplectic_bits(p);
        for (pivot, row) in &basis {
            if r.get(*pivot) {
                r.xor_assign(row);
            }
        }
        if let Some(pivot) = r.first_one() {
            for (_, row) in basis.iter_mut() {
                if row.get(pivot) {
                    row.xor_assign(&r);
                }
            }
            basis.push((pivot, r));
        }
    }
    basis
}

/// A validated commuting Pauli subgroup not containing `-1`.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    n: usize,
    gens: Vec<Pauli>,
    rank: usize,
}

pub fn make_group(n: usize, gens: Vec<Pauli>) -> Result<StabilizerGroup, PauliError> {
    for g in &gens {
        if g.n() != n {
            return Err(PauliError::QubitMismatch(n, g.n()));
        }
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].commutes(&gens[j])? {
                return Err(PauliError::NonCommuting(i, j));
            }
        }
    }
    // Elimination carrying the actual group elements: a generator whose bits
    // reduce to zero is a product of earlier ones and must come out as +I.
    let mut basis: Vec<(usize, Bits, Pauli)> = Vec::new();
    for (idx, g) in gens.iter().enumerate() {
        if !g.square().is_identity() {
            return Err(PauliError::MinusOneInGroup(idx));
        }
        let mut bits = symplectic_bits(g);
        let mut elem = g.clone();
        for (pivot, row, e) in &basis {
            if bits.get(*pivot) {
                bits.xor_assign(row);
                elem = &elem * e;
            }
        }
        match bits.first_one() {
            None if !elem.is_identity() => return Err(PauliError::MinusOneInGroup(idx)),
            None => {}
            Some(pivot) => {
                for (_, row, e) in basis.iter_mut() {
                    if row.get(pivot) {
                        row.xor_assign(&bits);
                        *e = &*e * &elem;
                    }
                }
                basis.push((pivot, bits, elem));
            }
        }
    }
    Ok(StabilizerGroup {
        n,
        rank: basis.len(),
        gens,
    })
}

impl StabilizerGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Pauli] {
        &self.gens
    }

    pub fn independent_rank(&self) -> usize {
        self.rank
    }

    /// log₂ of the codespace dimension.
    pub fn logical_qubits(&self) -> usize {
        self.n - self.rank
    }

    pub fn codespace_dimension(&self) -> u128 {
        1u128
            .checked_shl(self.logical_qubits() as u32)
            .expect("codespace dimension does not fit in u128")
    }
}
