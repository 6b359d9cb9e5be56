//! Haar-random unitaries and states.
//!
//! A complex Ginibre matrix is orthonormalized by QR and the phases of `R`'s
//! diagonal are pushed back into `Q`, which makes the law of `Q` exactly Haar.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

use super::eig::{from_nalgebra, to_nalgebra};
use super::layout::SubsystemLayout;
use super::matrix::{Matrix, C64};
use super::operator::Operator;
use super::state::StateVector;

/// `d × d` matrix of i.i.d. standard complex Gaussians (`E|z|² = 1`).
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Matrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * s, im * s)
    })
}

pub fn haar_unitary_matrix<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Matrix> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let g = ginibre(d, d, rng);
    let qr = nalgebra::linalg::QR::new(to_nalgebra(&g));
    let q = from_nalgebra(&qr.q());
    let r = qr.r();
    let phases: Vec<C64> = (0..d)
        .map(|i| {
            let x = r[(i, i)];
            if x.norm() == 0.0 {
                C64::new(1.0, 0.0)
            } else {
                x / x.norm()
            }
        })
        .collect();
    Ok(Matrix::from_fn(d, d, |i, j| q.get(i, j) * phases[j]))
}

/// Haar-random unitary on `C^d`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Operator> {
    Operator::new(haar_unitary_matrix(d, rng)?, SubsystemLayout::single(d))
}

/// `U|0⟩` for Haar-random `U`.
pub fn haar_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<StateVector> {
    let u = haar_unitary_matrix(d, rng)?;
    Ok(StateVector::single(u.column(0)))
}

/// Random Hermitian matrix from the Gaussian unitary ensemble, unit Frobenius norm.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let g = ginibre(n, n, rng);
    let h = g.hermitian_part();
    let norm = h.frobenius_norm();
    if norm == 0.0 {
        h
    } else {
        h.scale_real(1.0 / norm)
    }
}
