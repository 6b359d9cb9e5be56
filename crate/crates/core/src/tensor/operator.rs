//! Square operators tagged with a subsystem layout.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::limits::Limits;

use super::eig::{hermitian_eig, Eigen};
use super::layout::SubsystemLayout;
use super::matrix::{Matrix, C64, ZERO};

/// Dense square operator on a tensor-product space.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    matrix: Matrix,
    layout: SubsystemLayout,
}

impl Operator {
    pub fn new(matrix: Matrix, layout: SubsystemLayout) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.rows() != layout.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dim(),
                actual: matrix.rows(),
            });
        }
        Ok(Self { matrix, layout })
    }

    /// Operator on a single factor whose dimension is the matrix side.
    pub fn single(matrix: Matrix) -> Result<Self> {
        let d = matrix.rows();
        Self::new(matrix, SubsystemLayout::single(d))
    }

    pub fn identity(layout: SubsystemLayout) -> Self {
        let n = layout.total_dim();
        Self {
            matrix: Matrix::identity(n),
            layout,
        }
    }

    pub fn zeros(layout: SubsystemLayout) -> Self {
        let n = layout.total_dim();
        Self {
            matrix: Matrix::zeros(n, n),
            layout,
        }
    }

    pub(crate) fn from_parts(matrix: Matrix, layout: SubsystemLayout) -> Self {
        debug_assert!(matrix.is_square() && matrix.rows() == layout.total_dim());
        Self { matrix, layout }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// Same entries, different factorization of the same total dimension.
    pub fn relabel(self, layout: SubsystemLayout) -> Result<Self> {
        Self::new(self.matrix, layout)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.matrix.get(i, j)
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn trace_product(&self, other: &Operator) -> C64 {
        self.matrix.trace_product(&other.matrix)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn distance(&self, other: &Operator) -> f64 {
        self.matrix.distance(&other.matrix)
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            matrix: self.matrix.adjoint(),
            layout: self.layout.clone(),
        }
    }

    pub fn conj(&self) -> Operator {
        Operator {
            matrix: self.matrix.conj(),
            layout: self.layout.clone(),
        }
    }

    pub fn scale(&self, c: f64) -> Operator {
        Operator {
            matrix: self.matrix.scale_real(c),
            layout: self.layout.clone(),
        }
    }

    pub fn scale_complex(&self, c: C64) -> Operator {
        Operator {
            matrix: self.matrix.scale(c),
            layout: self.layout.clone(),
        }
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.matrix.hermitian_defect()
    }

    pub fn hermitian_part(&self) -> Operator {
        Operator {
            matrix: self.matrix.hermitian_part(),
            layout: self.layout.clone(),
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `‖X² − X‖_F`.
    pub fn projector_defect(&self) -> f64 {
        self.matrix.matmul(&self.matrix).distance(&self.matrix)
    }

    pub fn is_projector(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && self.projector_defect() <= tol
    }

    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        Ok(self.eig()?.values.first().is_none_or(|&v| v >= -tol))
    }

    pub fn eig(&self) -> Result<Eigen> {
        hermitian_eig(self)
    }

    fn check_same_layout(&self, other: &Operator) -> Result<()> {
        if self.layout != other.layout {
            return Err(Error::LayoutMismatch(
                self.layout.dims().to_vec(),
                other.layout.dims().to_vec(),
            ));
        }
        Ok(())
    }

    pub fn try_matmul(&self, other: &Operator) -> Result<Operator> {
        self.check_same_layout(other)?;
        Ok(Operator {
            matrix: self.matrix.matmul(&other.matrix),
            layout: self.layout.clone(),
        })
    }

    pub fn try_add(&self, other: &Operator) -> Result<Operator> {
        self.check_same_layout(other)?;
        Ok(Operator {
            matrix: &self.matrix + &other.matrix,
            layout: self.layout.clone(),
        })
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: f64, other: &Operator) {
        assert_eq!(self.layout, other.layout, "axpy: layout mismatch");
        self.matrix.axpy(C64::new(c, 0.0), &other.matrix);
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        self.matrix.mul_vec(v)
    }

    /// `⟨u| X |v⟩`.
    pub fn expectation(&self, u: &[C64], v: &[C64]) -> C64 {
        let xv = self.matrix.mul_vec(v);
        u.iter().zip(&xv).map(|(a, b)| a.conj() * b).sum()
    }

    /// Tensor product, checked against the default operator cap.
    pub fn kron(&self, other: &Operator) -> Result<Operator> {
        self.kron_within(other, &Limits::DEFAULT)
    }

    pub fn kron_within(&self, other: &Operator, limits: &Limits) -> Result<Operator> {
        let dim = self.dim().checked_mul(other.dim()).ok_or(Error::Capacity {
            requested: usize::MAX,
            cap: limits.max_operator_dim,
        })?;
        limits.check_operator_dim(dim)?;
        Ok(Operator {
            matrix: self.matrix.kron(&other.matrix),
            layout: self.layout.concat(&other.layout),
        })
    }

    /// Traces out the listed factors; the kept factors stay in order.
    pub fn partial_trace(&self, traced: &[usize]) -> Result<Operator> {
        self.layout.check_factors(traced)?;
        let n_factors = self.layout.num_factors();
        let dims = self.layout.dims();
        let strides = self.layout.strides();
        let kept: Vec<usize> = (0..n_factors).filter(|f| !traced.contains(f)).collect();
        let gone: Vec<usize> = (0..n_factors).filter(|f| traced.contains(f)).collect();

        let offsets = |factors: &[usize]| -> Vec<usize> {
            let mut offs = vec![0usize];
            for &f in factors {
                let mut next = Vec::with_capacity(offs.len() * dims[f]);
                for &o in &offs {
                    for x in 0..dims[f] {
                        next.push(o + x * strides[f]);
                    }
                }
                offs = next;
            }
            offs
        };
        let kept_off = offsets(&kept);
        let gone_off = offsets(&gone);

        let n = self.dim();
        let data = self.matrix.data();
        let m = kept_off.len();
        let mut out = Matrix::zeros(m, m);
        for (i, &ri) in kept_off.iter().enumerate() {
            for (j, &cj) in kept_off.iter().enumerate() {
                let mut acc = ZERO;
                for &t in &gone_off {
                    acc += data[(ri + t) * n + cj + t];
                }
                out.set(i, j, acc);
            }
        }
        Ok(Operator {
            matrix: out,
            layout: self.layout.without(traced),
        })
    }

    /// Transposes the listed factors in the computational basis.
    pub fn partial_transpose(&self, factors: &[usize]) -> Result<Operator> {
        self.layout.check_factors(factors)?;
        let mut fs: Vec<usize> = factors.to_vec();
        fs.sort_unstable();
        fs.dedup();
        let dims = self.layout.dims();
        let strides = self.layout.strides();
        let n = self.dim();
        let src = self.matrix.data();
        let mut out = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                let (mut nr, mut nc) = (r, c);
                for &f in &fs {
                    let s = strides[f];
                    let (rf, cf) = ((r / s) % dims[f], (c / s) % dims[f]);
                    nr = nr - rf * s + cf * s;
                    nc = nc - cf * s + rf * s;
                }
                out[nr * n + nc] = src[r * n + c];
            }
        }
        Ok(Operator {
            matrix: Matrix::from_vec(n, n, out)?,
            layout: self.layout.clone(),
        })
    }

    /// `(⊗_f A_f) X (⊗_f A_f)†` where `locals[f]` acts on factor `f`.
    ///
    /// Applied factor by factor, so the cost is `O(dim² · Σ d_f)` instead of a
    /// dense `dim³` product.
    pub fn conjugate_by_local(&self, locals: &[Matrix]) -> Result<Operator> {
        if locals.len() != self.layout.num_factors() {
            return Err(Error::DimensionMismatch {
                expected: self.layout.num_factors(),
                actual: locals.len(),
            });
        }
        let mut m = self.matrix.clone();
        for (f, a) in locals.iter().enumerate() {
            if a.rows() != self.layout.dims()[f] || !a.is_square() {
                return Err(Error::DimensionMismatch {
                    expected: self.layout.dims()[f],
                    actual: a.rows(),
                });
            }
            m = apply_local_left(&m, &self.layout, f, a);
            m = apply_local_right_adjoint(&m, &self.layout, f, a);
        }
        Ok(Operator {
            matrix: m,
            layout: self.layout.clone(),
        })
    }
}

/// `(1 ⊗ … ⊗ A_f ⊗ … ⊗ 1) X`.
pub(crate) fn apply_local_left(
    x: &Matrix,
    layout: &SubsystemLayout,
    f: usize,
    a: &Matrix,
) -> Matrix {
    let d = layout.dims()[f];
    let s = layout.strides()[f];
    let n = x.rows();
    let cols = x.cols();
    let src = x.data();
    let mut out = vec![ZERO; n * cols];
    for r in 0..n {
        let digit = (r / s) % d;
        let base = r - digit * s;
        let out_row = &mut out[r * cols..(r + 1) * cols];
        for y in 0..d {
            let coef = a.get(digit, y);
            if coef == ZERO {
                continue;
            }
            let src_row = &src[(base + y * s) * cols..(base + y * s + 1) * cols];
            for (o, &v) in out_row.iter_mut().zip(src_row) {
                *o += coef * v;
            }
        }
    }
    Matrix::from_vec(n, cols, out).expect("shape preserved")
}

/// `X (1 ⊗ … ⊗ A_f ⊗ … ⊗ 1)†`.
pub(crate) fn apply_local_right_adjoint(
    x: &Matrix,
    layout: &SubsystemLayout,
    f: usize,
    a: &Matrix,
) -> Matrix {
    let d = layout.dims()[f];
    let s = layout.strides()[f];
    let n = x.rows();
    let cols = x.cols();
    let src = x.data();
    let mut out = vec![ZERO; n * cols];
    for r in 0..n {
        let src_row = &src[r * cols..(r + 1) * cols];
        let out_row = &mut out[r * cols..(r + 1) * cols];
        for (c, o) in out_row.iter_mut().enumerate() {
            let digit = (c / s) % d;
            let base = c - digit * s;
            let mut acc = ZERO;
            for y in 0..d {
                acc += src_row[base + y * s] * a.get(digit, y).conj();
            }
            *o = acc;
        }
    }
    Matrix::from_vec(n, cols, out).expect("shape preserved")
}

impl Add for &Operator {
    type Output = Operator;
    /// Panics on layout mismatch; see [`Operator::try_add`].
    fn add(self, rhs: &Operator) -> Operator {
        self.try_add(rhs)
            .expect("operator addition: layout mismatch")
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(
            self.layout, rhs.layout,
            "operator subtraction: layout mismatch"
        );
        Operator {
            matrix: &self.matrix - &rhs.matrix,
            layout: self.layout.clone(),
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    /// Panics on layout mismatch; see [`Operator::try_matmul`].
    fn mul(self, rhs: &Operator) -> Operator {
        self.try_matmul(rhs)
            .expect("operator product: layout mismatch")
    }
}
