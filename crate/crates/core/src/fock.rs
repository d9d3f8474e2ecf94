//! Dense model of the exterior algebra on `n` generators ψ₁..ψₙ.
//!
//! The basis vector for occupation bits `a₁..aₙ` is `ψ₁^{a₁} ∧ ⋯ ∧ ψₙ^{aₙ}`,
//! stored at the index whose binary expansion reads `a₁..aₙ` with `a₁` most
//! significant. `ψᵢ` acts by left wedge multiplication, `ψᵢ*` by contraction.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::formula::Sign;
use crate::linalg::{c, check_dense, dump_matrix, dump_vector, CMatrix, CVector, DenseLimitExceeded, DEFAULT_DENSE_LIMIT};
use crate::pauli::Pauli;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error(transparent)]
    Dense(#[from] DenseLimitExceeded),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockSpace {
    n: usize,
    labels: Vec<String>,
}

impl FockSpace {
    pub fn new(n: usize) -> Result<FockSpace, FockError> {
        FockSpace::with_limit(n, DEFAULT_DENSE_LIMIT)
    }

    pub fn with_limit(n: usize, limit: usize) -> Result<FockSpace, FockError> {
        check_dense(n, limit)?;
        Ok(FockSpace {
            n,
            labels: (1..=n).map(|i| format!("psi{i}")).collect(),
        })
    }

    /// Attaches generator labels, e.g. link-fermion ids.
    pub fn labelled(mut self, labels: Vec<String>) -> FockSpace {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    fn check_index(&self, i: usize) -> Result<(), FockError> {
        if i == 0 || i > self.n {
            Err(FockError::IndexOutOfRange { index: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Index mask of generator `i` (1-based).
    fn bit(&self, i: usize) -> usize {
        1 << (self.n - i)
    }

    /// Basis vector from occupation bits `a₁..aₙ`.
    pub fn basis(&self, bits: &[u8]) -> FockVector {
        assert_eq!(bits.len(), self.n);
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
        self.basis_index(idx)
    }

    pub fn basis_index(&self, idx: usize) -> FockVector {
        let mut v = CVector::zeros(self.dim());
        v[idx] = c(1.0, 0.0);
        FockVector(v)
    }

    /// The empty wedge `1`.
    pub fn vacuum(&self) -> FockVector {
        self.basis_index(0)
    }

    pub fn identity(&self) -> FockOperator {
        FockOperator(CMatrix::identity(self.dim(), self.dim()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockVector(pub CVector);

impl FockVector {
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.0.dotc(&other.0)
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn dump(&self) -> String {
        dump_vector(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator(pub CMatrix);

impl FockOperator {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator(self.0.adjoint())
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        FockVector(&self.0 * &v.0)
    }

    pub fn scale(&self, s: Complex64) -> FockOperator {
        FockOperator(&self.0 * s)
    }

    pub fn anticommutator(&self, other: &FockOperator) -> FockOperator {
        FockOperator(&self.0 * &other.0 + &other.0 * &self.0)
    }

    pub fn dump(&self) -> String {
        dump_matrix(&self.0)
    }
}

impl Mul for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: &FockOperator) -> FockOperator {
        FockOperator(&self.0 * &rhs.0)
    }
}

impl Add for &FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: &FockOperator) -> FockOperator {
        FockOperator(&self.0 + &rhs.0)
    }
}

impl Sub for &FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: &FockOperator) -> FockOperator {
        FockOperator(&self.0 - &rhs.0)
    }
}

impl Neg for &FockOperator {
    type Output = FockOperator;
    fn neg(self) -> FockOperator {
        FockOperator(-&self.0)
    }
}

/// `ψᵢ ∧ −`: inserting ψᵢ into canonical position costs one sign per
/// occupied generator before it.
pub fn wedge_op(space: &FockSpace, i: usize) -> Result<FockOperator, FockError> {
    space.check_index(i)?;
    let dim = space.dim();
    let bit = space.bit(i);
    let before = !(2 * bit - 1) & (dim - 1);
    let mut m = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        if b & bit == 0 {
            let sign = if (b & before).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            m[(b | bit, b)] = c(sign, 0.0);
        }
    }
    Ok(FockOperator(m))
}

/// Contraction `ψᵢ*`, removing ψᵢ with the sign `(−1)^{j−1}` of its slot.
pub fn contract_op(space: &FockSpace, i: usize) -> Result<FockOperator, FockError> {
    space.check_index(i)?;
    let dim = space.dim();
    let bit = space.bit(i);
    let before = !(2 * bit - 1) & (dim - 1);
    let mut m = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        if b & bit != 0 {
            let sign = if (b & before).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            m[(b & !bit, b)] = c(sign, 0.0);
        }
    }
    Ok(FockOperator(m))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CarReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub max_deviation: f64,
}

impl CarReport {
    pub fn holds(&self) -> bool {
        self.max_deviation == 0.0
    }
}

/// Sweeps all `i, j` through `{ψᵢ,ψⱼ} = 0`, `{ψᵢ*,ψⱼ*} = 0`, `{ψᵢ,ψⱼ*} = δᵢⱼ`.
pub fn car_check(space: &FockSpace) -> CarReport {
    let n = space.n();
    let w: Vec<_> = (1..=n).map(|i| wedge_op(space, i).expect("in range")).collect();
    let d: Vec<_> = (1..=n).map(|i| contract_op(space, i).expect("in range")).collect();
    let id = space.identity();
    let zero = CMatrix::zeros(space.dim(), space.dim());
    let mut max_dev: f64 = 0.0;
    let mut pairs = 0;
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { &id.0 } else { &zero };
            let devs = [
                crate::linalg::max_abs(&w[i].anticommutator(&w[j]).0),
                crate::linalg::max_abs(&d[i].anticommutator(&d[j]).0),
                crate::linalg::max_abs_diff(&w[i].anticommutator(&d[j]).0, delta),
            ];
            max_dev = devs.into_iter().fold(max_dev, f64::max);
            pairs += 1;
        }
    }
    CarReport {
        n,
        pairs_checked: pairs,
        max_deviation: max_dev,
    }
}

/// The three Jordan-Wigner images.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JwKind {
    /// `ψᵢ + ψᵢ*`
    Plus(usize),
    /// `ψᵢ*ψᵢ − ψᵢψᵢ*`
    Z(usize),
    /// `ψᵢ − ψᵢ*`
    Minus(usize),
}

impl JwKind {
    fn index(self) -> usize {
        match self {
            JwKind::Plus(i) | JwKind::Z(i) | JwKind::Minus(i) => i,
        }
    }
}

/// The qubit-side Pauli string: `Z₁⋯Z_{i−1}Xᵢ`, `Zᵢ`, or `−Z₁⋯ZᵢXᵢ`.
pub fn jw_pauli(n: usize, which: JwKind) -> Pauli {
    let i = which.index() - 1;
    let tail = |upto: usize| {
        (0..upto).fold(Pauli::identity(n), |p, q| &p * &Pauli::single(n, q, 'Z'))
    };
    match which {
        JwKind::Plus(_) => &tail(i) * &Pauli::single(n, i, 'X'),
        JwKind::Z(_) => Pauli::single(n, i, 'Z'),
        JwKind::Minus(_) => (&tail(i + 1) * &Pauli::single(n, i, 'X')).negated(),
    }
}

pub fn jw_operator(space: &FockSpace, which: JwKind) -> Result<FockOperator, FockError> {
    space.check_index(which.index())?;
    let m = jw_pauli(space.n(), which).dense_matrix(space.n()).expect("space size already checked");
    Ok(FockOperator(m))
}

/// The fermionic side of the same identity, built from ψᵢ and ψᵢ*.
pub fn jw_fermionic(space: &FockSpace, which: JwKind) -> Result<FockOperator, FockError> {
    let i = which.index();
    let w = wedge_op(space, i)?;
    let d = contract_op(space, i)?;
    Ok(match which {
        JwKind::Plus(_) => &w + &d,
        JwKind::Z(_) => &(&d * &w) - &(&w * &d),
        JwKind::Minus(_) => &w - &d,
    })
}

/// `G`, acting as `(−1)^{|a|}` on the basis vector with occupation `a`.
pub fn grading_operator(space: &FockSpace) -> FockOperator {
    let dim = space.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        m[(b, b)] = c(if b.count_ones() % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    FockOperator(m)
}

/// `(1/√2)(|+⋯+⟩ + (−1)^a |−⋯−⟩)`, which in the occupation basis is the
/// uniform superposition over bitstrings of parity `a`.
pub fn bell_state(space: &FockSpace, a: u8) -> FockVector {
    assert!(space.n() >= 1);
    let amp = (0.5f64).powf((space.n() as f64 - 1.0) / 2.0);
    FockVector(CVector::from_fn(space.dim(), |b, _| {
        if (b.count_ones() % 2) as u8 == a & 1 {
            c(amp, 0.0)
        } else {
            c(0.0, 0.0)
        }
    }))
}

/// `y(ψⱼ − yψⱼ*)(ψᵢ + yψᵢ*)`, positions 1-based.
pub fn edge_operator_oracle(space: &FockSpace, i: usize, j: usize, y: Sign) -> Result<FockOperator, FockError> {
    let s = c(y.value() as f64, 0.0);
    let wi = wedge_op(space, i)?;
    let di = contract_op(space, i)?;
    let wj = wedge_op(space, j)?;
    let dj = contract_op(space, j)?;
    let left = &wj - &dj.scale(s);
    let right = &wi + &di.scale(s);
    Ok((&left * &right).scale(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{exactly_equal, max_abs_diff};
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn sp(n: usize) -> FockSpace {
        FockSpace::new(n).unwrap()
    }

    #[test]
    fn wedge_and_contract_on_basis() {
        let s = sp(2);
        let w1 = wedge_op(&s, 1).unwrap();
        assert_eq!(w1.apply(&s.vacuum()), s.basis(&[1, 0]));
        let d1 = contract_op(&s, 1).unwrap();
        assert_eq!(d1.apply(&s.basis(&[1, 1])), s.basis(&[0, 1]));
        assert_eq!(w1.apply(&s.basis(&[1, 1])).norm(), 0.0);
        // ψ₂ past an occupied ψ₁ picks up a sign, ψ₂ ∧ ψ₁ = −ψ₁ ∧ ψ₂
        let w2 = wedge_op(&s, 2).unwrap();
        let v = w2.apply(&s.basis(&[1, 0]));
        assert_eq!(v.0[3], c(-1.0, 0.0));
        let d2 = contract_op(&s, 2).unwrap();
        assert_eq!(d2.apply(&s.basis(&[1, 1])).0[2], c(-1.0, 0.0));
        assert!(matches!(wedge_op(&s, 0), Err(FockError::IndexOutOfRange { .. })));
        assert!(matches!(contract_op(&s, 3), Err(FockError::IndexOutOfRange { .. })));
        assert!(FockSpace::new(15).is_err());
    }

    #[test]
    fn contraction_is_adjoint_of_wedge() {
        for n in 1..=6 {
            let s = sp(n);
            for i in 1..=n {
                assert!(exactly_equal(&contract_op(&s, i).unwrap().0, &wedge_op(&s, i).unwrap().adjoint().0));
            }
        }
    }

    #[test]
    fn car_relations() {
        let s = sp(1);
        let w = wedge_op(&s, 1).unwrap();
        let d = contract_op(&s, 1).unwrap();
        assert_eq!(w.anticommutator(&d), s.identity());
        let s = sp(2);
        let a = wedge_op(&s, 1).unwrap().anticommutator(&contract_op(&s, 2).unwrap());
        assert_eq!(a.0, DMatrix::zeros(4, 4));
        for n in 1..=6 {
            let r = car_check(&sp(n));
            assert!(r.holds(), "n={n}: {r:?}");
            assert_eq!(r.pairs_checked, n * n);
        }
    }

    #[test]
    fn jordan_wigner_identities() {
        let s = sp(1);
        let x = Pauli::single(1, 0, 'X').dense_matrix(1).unwrap();
        assert_eq!(jw_operator(&s, JwKind::Plus(1)).unwrap().0, x);
        let s2 = sp(2);
        let m = jw_operator(&s2, JwKind::Minus(2)).unwrap();
        assert_eq!(m.0, "-ZY".parse::<Pauli>().unwrap().with_phase(1).dense_matrix(2).unwrap());
        assert_eq!(m, jw_fermionic(&s2, JwKind::Minus(2)).unwrap());
        for n in 1..=6 {
            let s = sp(n);
            for i in 1..=n {
                for k in [JwKind::Plus(i), JwKind::Z(i), JwKind::Minus(i)] {
                    let q = jw_operator(&s, k).unwrap();
                    let f = jw_fermionic(&s, k).unwrap();
                    assert!(exactly_equal(&q.0, &f.0), "n={n} {k:?}");
                }
            }
        }
    }

    #[test]
    fn grading_is_product_of_z() {
        let s = sp(1);
        let g = grading_operator(&s);
        assert_eq!(g.apply(&s.basis(&[0])), s.basis(&[0]));
        assert_eq!(g.apply(&s.basis(&[1])).0[1], c(-1.0, 0.0));
        for n in 1..=6 {
            let s = sp(n);
            let g = grading_operator(&s);
            let zs = (1..=n).fold(s.identity(), |acc, i| &acc * &jw_operator(&s, JwKind::Z(i)).unwrap());
            assert!(exactly_equal(&g.0, &zs.0));
            assert!(exactly_equal(&(&g * &g).0, &s.identity().0));
        }
    }

    #[test]
    fn bell_states() {
        let s = sp(2);
        let b = bell_state(&s, 0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(max_abs_diff(
            &CMatrix::from_column_slice(4, 1, b.0.as_slice()),
            &CMatrix::from_column_slice(4, 1, &[c(h, 0.), c(0., 0.), c(0., 0.), c(h, 0.)])
        ) < 1e-15);
        for n in 1..=5 {
            let s = sp(n);
            let g = grading_operator(&s);
            for a in 0..2u8 {
                for bb in 0..2u8 {
                    let ip = bell_state(&s, bb).inner(&bell_state(&s, a));
                    let want = if a == bb { 1.0 } else { 0.0 };
                    assert!((ip - c(want, 0.0)).norm() < 1e-12);
                }
                let v = bell_state(&s, a);
                let sign = if a == 0 { 1.0 } else { -1.0 };
                assert!((g.apply(&v).0 - &v.0 * c(sign, 0.0)).norm() < 1e-12);
            }
        }
        // |+⋯+⟩ ± |−⋯−⟩ expanded directly
        let s3 = sp(3);
        let plus = CVector::from_element(8, c(1.0 / 8f64.sqrt(), 0.0));
        let minus = CVector::from_fn(8, |b, _| c(if b.count_ones() % 2 == 0 { 1.0 } else { -1.0 } / 8f64.sqrt(), 0.0));
        let direct = (&plus - &minus) * c(h, 0.0);
        assert!((bell_state(&s3, 1).0 - direct).norm() < 1e-12);
        for gen in ["XXI", "IXX"] {
            let m = gen.parse::<Pauli>().unwrap().dense_matrix(3).unwrap();
            let v = bell_state(&s3, 0);
            assert!((&m * &v.0 - &v.0).norm() < 1e-12);
        }
    }

    #[test]
    fn oracle_is_self_adjoint() {
        let s = sp(4);
        for i in 1..=4 {
            for j in 1..=4 {
                if i != j {
                    for y in [Sign::Pos, Sign::Neg] {
                        let t = edge_operator_oracle(&s, i, j, y).unwrap();
                        assert!(exactly_equal(&t.0, &t.adjoint().0));
                        assert!(exactly_equal(&(&t * &t).0, &s.identity().0));
                    }
                }
            }
        }
    }

    #[test]
    fn dumps() {
        let s = sp(1);
        assert_eq!(s.vacuum().dump(), "0 1.00000000000000000e0 0.00000000000000000e0\n");
        let w = wedge_op(&s, 1).unwrap();
        assert_eq!(w.dump().lines().count(), 1);
        assert!(w.dump().starts_with("2 "));
    }

    fn arb_vec(dim: usize) -> impl Strategy<Value = CVector> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
            .prop_map(move |v| CVector::from_iterator(dim, v.into_iter().map(|(a, b)| c(a, b))))
    }

    fn case() -> impl Strategy<Value = (usize, usize, CVector, CVector)> {
        (1usize..=6).prop_flat_map(|n| (Just(n), 1..=n, arb_vec(1 << n), arb_vec(1 << n)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn adjointness_on_vectors((n, i, x, y) in case()) {
            let s = sp(n);
            let lhs = (wedge_op(&s, i).unwrap().0 * &x).dotc(&y);
            let rhs = x.dotc(&(contract_op(&s, i).unwrap().0 * &y));
            prop_assert!((lhs - rhs).norm() <= 1e-12);
        }
    }
}
