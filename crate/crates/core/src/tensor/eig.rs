//! Hermitian eigendecomposition and thin QR, backed by nalgebra.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

use super::matrix::{Matrix, C64};
use super::operator::Operator;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl Eigen {
    /// `V diag(f(λ)) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.vectors.rows();
        let mut out = Matrix::zeros(n, n);
        for (j, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            out.add_weighted_projector(w, &self.vectors.column(j));
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix {
        self.reconstruct_with(|x| x)
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.values.iter().filter(|&&v| v > tol).count()
    }
}

pub(crate) fn to_nalgebra(m: &Matrix) -> DMatrix<C64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.data())
}

pub(crate) fn from_nalgebra(m: &DMatrix<C64>) -> Matrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Relative Hermiticity tolerance accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Eigendecomposition of a Hermitian operator, eigenvalues ascending.
pub fn hermitian_eig(x: &Operator) -> Result<Eigen> {
    hermitian_eig_matrix(x.matrix())
}

pub fn hermitian_eig_matrix(x: &Matrix) -> Result<Eigen> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let defect = x.hermitian_defect();
    if defect > HERMITIAN_TOL * x.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let n = x.rows();
    if n == 0 {
        return Ok(Eigen {
            values: Vec::new(),
            vectors: Matrix::zeros(0, 0),
        });
    }
    let eig = nalgebra::SymmetricEigen::new(to_nalgebra(&x.hermitian_part()));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Eigen { values, vectors })
}

/// Thin QR of a tall matrix: `(Q, R)` with `Q` having orthonormal columns.
pub fn thin_qr(a: &Matrix) -> (Matrix, Matrix) {
    let qr = nalgebra::linalg::QR::new(to_nalgebra(a));
    (from_nalgebra(&qr.q()), from_nalgebra(&qr.r()))
}

/// `‖Σ_i w_i |u_i⟩⟨u_i| − Σ_j v_j |x_j⟩⟨x_j|‖_F` from the factors alone.
///
/// Both sums are projected onto an orthonormal basis of the joint span, so
/// the residual is accurate to roundoff without forming `dim × dim`
/// matrices.
pub fn low_rank_difference_norm(a: &[(f64, &[C64])], b: &[(f64, &[C64])]) -> f64 {
    let cols = a.len() + b.len();
    if cols == 0 {
        return 0.0;
    }
    let dim = a.iter().chain(b).next().map_or(0, |(_, v)| v.len());
    let mut z = Matrix::zeros(dim, cols);
    let mut weights = Vec::with_capacity(cols);
    for (j, (w, v)) in a
        .iter()
        .map(|&(w, v)| (w, v))
        .chain(b.iter().map(|&(w, v)| (-w, v)))
        .enumerate()
    {
        assert_eq!(v.len(), dim, "low-rank factors must share a dimension");
        for (i, &x) in v.iter().enumerate() {
            z.set(i, j, x);
        }
        weights.push(w);
    }
    let (_, r) = thin_qr(&z);
    // Δ = Q (R K R†) Q†, K = diag(weights)
    let rk = Matrix::from_fn(r.rows(), r.cols(), |i, j| r.get(i, j) * weights[j]);
    rk.matmul(&r.adjoint()).frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{max_entangled_state, SubsystemLayout};

    #[test]
    fn identity_spectrum() {
        let e = hermitian_eig(&Operator::identity(SubsystemLayout::single(3))).unwrap();
        assert!(e.values.iter().all(|&v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn bell_projector_spectrum() {
        let p = max_entangled_state(2).unwrap().projector();
        let e = hermitian_eig(&p).unwrap();
        let expected = [0.0, 0.0, 0.0, 1.0];
        for (v, x) in e.values.iter().zip(expected) {
            assert!((v - x).abs() < 1e-14);
        }
        assert!(e.reconstruct().distance(p.matrix()) < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            hermitian_eig_matrix(&m),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn low_rank_difference_matches_dense() {
        let u: Vec<C64> = (0..6).map(|i| C64::new(i as f64, 1.0 - i as f64)).collect();
        let v: Vec<C64> = (0..6)
            .map(|i| C64::new((i * i) as f64 * 0.1, 0.3))
            .collect();
        let dense_a = Matrix::outer(&u, &u).scale_real(0.5);
        let dense_b = Matrix::outer(&v, &v).scale_real(2.0);
        let expected = dense_a.distance(&dense_b);
        let got = low_rank_difference_norm(&[(0.5, &u)], &[(2.0, &v)]);
        assert!((got - expected).abs() < 1e-10 * expected.max(1.0));
        assert!(low_rank_difference_norm(&[(1.0, &u)], &[(1.0, &u)]) < 1e-12);
    }
}
