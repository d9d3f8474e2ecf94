//! Dense complex matrix helpers shared by the numerical checks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Default largest qubit count for which dense 2ⁿ × 2ⁿ matrices are built.
pub const DEFAULT_DENSE_LIMIT: usize = 14;

/// Hard ceiling for any configured dense limit.
pub const MAX_DENSE_LIMIT: usize = 20;

/// Gap below which two eigenvalues are treated as degenerate.
pub const EIGEN_GAP: f64 = 1e-8;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{qubits} qubits exceeds the dense limit of {limit}")]
pub struct DenseLimitExceeded {
    pub qubits: usize,
    pub limit: usize,
}

pub fn check_dense(qubits: usize, limit: usize) -> Result<(), DenseLimitExceeded> {
    if qubits > limit.min(MAX_DENSE_LIMIT) {
        Err(DenseLimitExceeded { qubits, limit })
    } else {
        Ok(())
    }
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Powers of `i`, indexed by exponent mod 4.
pub fn i_pow(k: u8) -> Complex64 {
    match k & 3 {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    }
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Bitwise equality of two matrices. Only meaningful when both sides are
/// built from small integers.
pub fn exactly_equal(a: &CMatrix, b: &CMatrix) -> bool {
    a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| x == y)
}

pub fn is_hermitian(a: &CMatrix, tol: f64) -> bool {
    a.is_square() && max_abs_diff(a, &a.adjoint()) <= tol
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = a.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(a.nrows(), order.len(), |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}

/// Groups ascending eigenvalues into `(mean, multiplicity)` clusters.
pub fn group_eigenvalues(sorted: &[f64], gap: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some((sum, count, last)) if v - *last <= gap => {
                *sum += v;
                *count += 1;
                *last = v;
            }
            _ => out.push((v, 1, v)),
        }
    }
    // clusters straddling zero report exactly 0
    out.into_iter()
        .map(|(s, n, _)| {
            let mean = s / n as f64;
            (if mean.abs() <= gap { 0.0 } else { mean }, n)
        })
        .collect()
}

/// Eigenvectors spanning the lowest eigenspace, with its energy.
pub fn ground_space(a: &CMatrix) -> (f64, CMatrix) {
    let (values, vectors) = hermitian_eigen(a);
    let (energy, mult) = group_eigenvalues(&values, EIGEN_GAP)[0];
    (energy, vectors.columns(0, mult).into_owned())
}

/// Orthonormal basis of the column span (modified Gram-Schmidt with one
/// re-orthogonalisation pass). Columns with residual norm below `tol` are dropped.
pub fn orthonormalize(cols: &CMatrix, tol: f64) -> CMatrix {
    let mut basis: Vec<CVector> = Vec::new();
    for j in 0..cols.ncols() {
        let mut v = cols.column(j).into_owned();
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dotc(&v);
                v -= b * proj;
            }
        }
        let norm = v.norm();
        if norm > tol {
            basis.push(v / Complex64::from(norm));
        }
    }
    let rows = cols.nrows();
    if basis.is_empty() {
        return CMatrix::zeros(rows, 0);
    }
    CMatrix::from_columns(&basis)
}

/// `(1/d) ‖A†B‖²_F` for orthonormal column sets A, B; 1 iff the spans agree.
/// `d` is the larger of the two dimensions.
pub fn subspace_fidelity(a: &CMatrix, b: &CMatrix) -> f64 {
    let d = a.ncols().max(b.ncols());
    if d == 0 {
        return 1.0;
    }
    let overlap = a.adjoint() * b;
    overlap.iter().map(|x| x.norm_sqr()).sum::<f64>() / d as f64
}

/// Plain-text dump: one `index re im` line per nonzero entry.
/// Matrices are flattened row-major.
pub fn dump_vector(v: &CVector) -> String {
    let mut s = String::new();
    for (i, a) in v.iter().enumerate() {
        if *a != Complex64::from(0.0) {
            s.push_str(&format!("{} {:.17e} {:.17e}\n", i, a.re, a.im));
        }
    }
    s
}

pub fn dump_matrix(m: &CMatrix) -> String {
    let mut s = String::new();
    for r in 0..m.nrows() {
        for col in 0..m.ncols() {
            let a = m[(r, col)];
            if a != Complex64::from(0.0) {
                s.push_str(&format!("{} {:.17e} {:.17e}\n", r * m.ncols() + col, a.re, a.im));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grouping_respects_gap() {
        let g = group_eigenvalues(&[-2.0, -2.0 + 1e-12, 0.0, 0.0, 2.0], EIGEN_GAP);
        assert_eq!(g.len(), 3);
        assert_eq!(g[0].1, 2);
        assert_eq!(g[1], (0.0, 2));
    }

    #[test]
    fn eigen_of_pauli_x() {
        let x = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let (vals, vecs) = hermitian_eigen(&x);
        assert!((vals[0] + 1.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);
        let back = &vecs * CMatrix::from_diagonal(&CVector::from_iterator(2, vals.iter().map(|&v| c(v, 0.)))) * vecs.adjoint();
        assert!(max_abs_diff(&back, &x) < 1e-12);
    }

    #[test]
    fn orthonormalize_drops_dependent_columns() {
        let m = CMatrix::from_row_slice(3, 3, &[
            c(1., 0.), c(2., 0.), c(0., 0.),
            c(1., 0.), c(2., 0.), c(0., 0.),
            c(0., 0.), c(0., 0.), c(0., 1.),
        ]);
        let q = orthonormalize(&m, 1e-10);
        assert_eq!(q.ncols(), 2);
        let gram = q.adjoint() * &q;
        assert!(max_abs_diff(&gram, &CMatrix::identity(2, 2)) < 1e-12);
        assert!((subspace_fidelity(&q, &q) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dense_limit() {
        assert!(check_dense(14, DEFAULT_DENSE_LIMIT).is_ok());
        assert_eq!(check_dense(15, 14), Err(DenseLimitExceeded { qubits: 15, limit: 14 }));
        assert!(check_dense(21, 30).is_err());
    }

    #[test]
    fn dump_formats() {
        let v = CVector::from_vec(vec![c(0., 0.), c(0.5, -1.0)]);
        assert_eq!(dump_vector(&v), "1 5.00000000000000000e-1 -1.00000000000000000e0\n");
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        assert!(dump_matrix(&m).starts_with("1 "));
    }
}
