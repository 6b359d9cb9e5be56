use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Local dimensions of the tensor factors of a Hilbert space.
///
/// Factor 0 is the most significant slot of the computational-basis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsystemLayout {
    dims: Vec<usize>,
}

impl SubsystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "zero local dimension in {dims:?}"
            )));
        }
        Ok(Self { dims })
    }

    /// `n` factors of dimension `d`.
    pub fn uniform(d: usize, n: usize) -> Self {
        assert!(d > 0, "local dimension must be positive");
        Self { dims: vec![d; n] }
    }

    /// A single factor of dimension `d`.
    pub fn single(d: usize) -> Self {
        Self::uniform(d, 1)
    }

    /// The trivial (one-dimensional, zero-factor) space.
    pub fn trivial() -> Self {
        Self { dims: Vec::new() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn concat(&self, other: &SubsystemLayout) -> SubsystemLayout {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        SubsystemLayout { dims }
    }

    /// Row-major strides: `strides()[f]` is the index weight of factor `f`.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for f in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[f] = strides[f + 1] * self.dims[f + 1];
        }
        strides
    }

    /// Splits a basis index into per-factor digits.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for f in (0..self.dims.len()).rev() {
            out[f] = index % self.dims[f];
            index /= self.dims[f];
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&x, &d)| acc * d + x)
    }

    pub(crate) fn check_factors(&self, factors: &[usize]) -> Result<()> {
        for &f in factors {
            if f >= self.dims.len() {
                return Err(Error::FactorOutOfRange {
                    index: f,
                    factors: self.dims.len(),
                });
            }
        }
        Ok(())
    }

    /// Layout restricted to the factors not in `removed`, order preserved.
    pub fn without(&self, removed: &[usize]) -> SubsystemLayout {
        let dims = self
            .dims
            .iter()
            .enumerate()
            .filter(|(f, _)| !removed.contains(f))
            .map(|(_, &d)| d)
            .collect();
        SubsystemLayout { dims }
    }
}
