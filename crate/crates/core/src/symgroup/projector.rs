//! Young projectors and the symmetric subspace of `(C^d)^{⊗n}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::limits::{pow_within, Limits};
use crate::tensor::{
    Matrix, Operator, Permutation, PermutationAction, StateVector, SubsystemLayout, C64,
};

use super::character::character_of_class;
use super::partition::Partition;

/// A frame with its irrep dimension and Schur–Weyl multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepData {
    pub partition: Partition,
    pub d_mu: u128,
    pub m_mu: u128,
}

impl IrrepData {
    pub fn new(partition: Partition, d: usize) -> Self {
        let d_mu = partition.dim_standard();
        let m_mu = partition.mult_semistandard(d);
        Self {
            partition,
            d_mu,
            m_mu,
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

fn check_budget(n: usize, d: usize, limits: &Limits) -> Result<usize> {
    limits.check_perm_degree(n)?;
    pow_within(d, n, limits.max_operator_dim)
}

/// `Σ_σ c(σ) V_σ` on `(C^d)^{⊗n}`; `coef` is evaluated once per cycle type.
fn group_sum(
    n: usize,
    d: usize,
    limits: &Limits,
    mut coef: impl FnMut(&[usize]) -> f64,
) -> Result<Operator> {
    let dim = check_budget(n, d, limits)?;
    let mut acc = Matrix::zeros(dim, dim);
    let mut by_class: HashMap<Vec<usize>, f64> = HashMap::new();
    for sigma in Permutation::all(n) {
        let ct = sigma.cycle_type();
        let c = *by_class.entry(ct).or_insert_with_key(|ct| coef(ct));
        if c == 0.0 {
            continue;
        }
        PermutationAction::new(&sigma, d)?.accumulate_into(&mut acc, C64::new(c, 0.0));
    }
    Operator::new(acc, SubsystemLayout::uniform(d, n))
}

/// `P_μ = (d_μ/k!) Σ_σ χ^μ(σ⁻¹) V_σ` on `(C^d)^{⊗k}`, `k = |μ|`.
pub fn young_projector(mu: &Partition, d: usize) -> Result<Operator> {
    young_projector_within(mu, d, &Limits::DEFAULT)
}

pub fn young_projector_within(mu: &Partition, d: usize, limits: &Limits) -> Result<Operator> {
    let k = mu.size();
    let scale = mu.dim_standard() as f64 / factorial(k);
    group_sum(k, d, limits, |ct| scale * character_of_class(mu, ct) as f64)
}

/// `P^sym = (1/n!) Σ_σ V_σ` on `(C^d)^{⊗n}`.
pub fn sym_projector(n: usize, d: usize) -> Result<Operator> {
    sym_projector_within(n, d, &Limits::DEFAULT)
}

pub fn sym_projector_within(n: usize, d: usize, limits: &Limits) -> Result<Operator> {
    let w = 1.0 / factorial(n);
    group_sum(n, d, limits, |_| w)
}

/// Orthonormal occupation-number basis of the symmetric subspace.
///
/// Vector `i` is the normalized sum of all basis kets whose sorted digit
/// string is `strings[i]`; strings are non-decreasing and listed in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct SymBasis {
    pub n: usize,
    pub d: usize,
    pub strings: Vec<Vec<usize>>,
    pub vectors: Vec<StateVector>,
}

impl SymBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `Σ_i |s_i⟩⟨s_i|`.
    pub fn projector(&self) -> Result<Operator> {
        let layout = SubsystemLayout::uniform(self.d, self.n);
        let dim = layout.total_dim();
        Limits::DEFAULT.check_operator_dim(dim)?;
        let mut m = Matrix::zeros(dim, dim);
        for v in &self.vectors {
            m.add_weighted_projector(1.0, v.data());
        }
        Operator::new(m, layout)
    }
}

fn nondecreasing_strings(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, d: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in min..d {
            prefix.push(x);
            rec(n, d, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, 0, &mut Vec::new(), &mut out);
    out
}

/// Symmetric-subspace basis of `(C^d)^{⊗n}`; `n = 0` gives the scalar 1.
pub fn sym_basis(n: usize, d: usize) -> Result<SymBasis> {
    let layout = SubsystemLayout::uniform(d, n);
    let dim = pow_within(d, n, Limits::DEFAULT.max_dim)?;
    let strings = nondecreasing_strings(n, d);
    let position: HashMap<&[usize], usize> = strings
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); strings.len()];
    for x in 0..dim {
        let mut digits = layout.digits(x);
        digits.sort_unstable();
        members[position[digits.as_slice()]].push(x);
    }
    let vectors = members
        .iter()
        .map(|idx| {
            let amp = C64::new(1.0 / (idx.len() as f64).sqrt(), 0.0);
            let mut data = vec![C64::new(0.0, 0.0); dim];
            for &x in idx {
                data[x] = amp;
            }
            StateVector::new(data, layout.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymBasis {
        n,
        d,
        strings,
        vectors,
    })
}
