//! Capacity caps and default tolerances.

use crate::error::{Error, Result};

/// Resource caps checked before any large allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest Hilbert-space dimension for state vectors, i.e. the bound on `d^(k+1)`.
    pub max_dim: usize,
    /// Largest side length of a dense operator.
    pub max_operator_dim: usize,
    /// Largest `k` for which sums over all of `S_k` are evaluated.
    pub max_perm_degree: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_dim: 65_536,
        max_operator_dim: 4_096,
        max_perm_degree: 8,
    };

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.max_dim {
            return Err(Error::Capacity {
                requested: dim,
                cap: self.max_dim,
            });
        }
        Ok(())
    }

    pub fn check_operator_dim(&self, dim: usize) -> Result<()> {
        if dim > self.max_operator_dim {
            return Err(Error::Capacity {
                requested: dim,
                cap: self.max_operator_dim,
            });
        }
        Ok(())
    }

    pub fn check_perm_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_perm_degree {
            return Err(Error::Budget {
                degree,
                cap: self.max_perm_degree,
            });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Tolerances for numerical identity checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub identity: f64,
    pub unitarity: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        identity: 1e-9,
        unitarity: 1e-12,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `base^exp` checked against `cap`.
pub fn pow_within(base: usize, exp: usize, cap: usize) -> Result<usize> {
    match checked_pow(base, exp) {
        Some(v) if v <= cap => Ok(v),
        Some(v) => Err(Error::Capacity { requested: v, cap }),
        None => Err(Error::Capacity {
            requested: usize::MAX,
            cap,
        }),
    }
}
