use crate::error::{Error, Result};
use crate::limits::Limits;

use super::layout::SubsystemLayout;
use super::matrix::{Matrix, C64, ONE, ZERO};
use super::operator::Operator;

/// Dense complex vector tagged with a subsystem layout.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    data: Vec<C64>,
    layout: SubsystemLayout,
}

impl StateVector {
    pub fn new(data: Vec<C64>, layout: SubsystemLayout) -> Result<Self> {
        if data.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dim(),
                actual: data.len(),
            });
        }
        Ok(Self { data, layout })
    }

    /// Vector on a single factor of dimension `data.len()`.
    pub fn single(data: Vec<C64>) -> Self {
        let d = data.len();
        Self {
            data,
            layout: SubsystemLayout::single(d),
        }
    }

    pub(crate) fn from_parts(data: Vec<C64>, layout: SubsystemLayout) -> Self {
        debug_assert_eq!(data.len(), layout.total_dim());
        Self { data, layout }
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(layout: SubsystemLayout, index: usize) -> Self {
        let mut data = vec![ZERO; layout.total_dim()];
        data[index] = ONE;
        Self { data, layout }
    }

    pub fn zeros(layout: SubsystemLayout) -> Self {
        Self {
            data: vec![ZERO; layout.total_dim()],
            layout,
        }
    }

    #[inline]
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    #[inline]
    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            data: self.data.iter().map(|&z| z * c).collect(),
            layout: self.layout.clone(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product: dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: C64, other: &StateVector) {
        assert_eq!(self.layout, other.layout, "axpy: layout mismatch");
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    pub fn distance(&self, other: &StateVector) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn kron(&self, other: &StateVector) -> Result<StateVector> {
        self.kron_within(other, &Limits::DEFAULT)
    }

    pub fn kron_within(&self, other: &StateVector, limits: &Limits) -> Result<StateVector> {
        let dim = self.dim().checked_mul(other.dim()).ok_or(Error::Capacity {
            requested: usize::MAX,
            cap: limits.max_dim,
        })?;
        limits.check_dim(dim)?;
        let mut data = Vec::with_capacity(dim);
        for &a in &self.data {
            data.extend(other.data.iter().map(|&b| a * b));
        }
        Ok(StateVector {
            data,
            layout: self.layout.concat(&other.layout),
        })
    }

    /// `|ψ⟩^{⊗n}`.
    pub fn tensor_power(&self, n: usize) -> Result<StateVector> {
        let mut acc = StateVector::basis(SubsystemLayout::trivial(), 0);
        for _ in 0..n {
            acc = acc.kron(self)?;
        }
        Ok(acc)
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> Operator {
        Operator::from_parts(Matrix::outer(&self.data, &self.data), self.layout.clone())
    }

    pub fn apply(&self, op: &Operator) -> Result<StateVector> {
        if op.layout() != &self.layout {
            return Err(Error::LayoutMismatch(
                op.layout().dims().to_vec(),
                self.layout.dims().to_vec(),
            ));
        }
        Ok(StateVector {
            data: op.apply(&self.data),
            layout: self.layout.clone(),
        })
    }
}

/// `|φ⁺_d⟩ = (1/√d) Σ_i |ii⟩` on `C^d ⊗ C^d`; `d = 1` gives the scalar 1.
pub fn max_entangled_state(d: usize) -> Result<StateVector> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "local dimension must be positive".into(),
        ));
    }
    let layout = SubsystemLayout::uniform(d, 2);
    let mut data = vec![ZERO; d * d];
    let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    for i in 0..d {
        data[i * d + i] = amp;
    }
    Ok(StateVector { data, layout })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_state_d2() {
        let phi = max_entangled_state(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [h, 0.0, 0.0, h];
        for (z, e) in phi.data().iter().zip(expected) {
            assert!((z - C64::new(e, 0.0)).norm() < 1e-15);
        }
        assert!(phi.is_normalized(1e-15));
    }

    #[test]
    fn trivial_max_entangled() {
        let phi = max_entangled_state(1).unwrap();
        assert_eq!(phi.dim(), 1);
        assert!((phi.data()[0] - ONE).norm() < 1e-15);
        assert!(max_entangled_state(0).is_err());
    }

    #[test]
    fn reduced_states_are_maximally_mixed() {
        for d in 1..5 {
            let rho = max_entangled_state(d).unwrap().projector();
            let target = Operator::identity(SubsystemLayout::single(d)).scale(1.0 / d as f64);
            assert!(rho.partial_trace(&[1]).unwrap().distance(&target) < 1e-14);
            assert!(rho.partial_trace(&[0]).unwrap().distance(&target) < 1e-14);
        }
    }

    #[test]
    fn kron_respects_cap() {
        let v = StateVector::zeros(SubsystemLayout::single(300));
        assert!(matches!(v.kron(&v), Err(Error::Capacity { .. })));
    }
}
