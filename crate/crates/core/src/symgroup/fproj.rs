//! Projectors `F_μ(α)` of the ideal generated by `|φ⁺⟩⟨φ⁺|` in the algebra of
//! partially transposed permutation operators on `(C^d)^{⊗k} ⊗ C^d_A`.

use crate::error::{Error, Result};
use crate::limits::{pow_within, Limits};
use crate::tensor::{
    permutation_operator, Operator, Permutation, PermutationAction, SubsystemLayout,
};

use super::partition::Partition;
use super::projector::young_projector_within;

/// `V^{t_A}` of the swap of two `d`-dimensional factors, transposed on the second.
pub fn transposed_swap(d: usize) -> Result<Operator> {
    permutation_operator(&Permutation::transposition(2, 0, 1)?, d)?.partial_transpose(&[1])
}

/// `γ_μ(α) = k m_μ d_α / (m_α d_μ)`.
pub fn gamma(mu: &Partition, alpha: &Partition, d: usize) -> Result<f64> {
    if !alpha.is_box_removal_of(mu) {
        return Err(Error::NotABoxRemoval {
            mu: mu.parts().to_vec(),
            alpha: alpha.parts().to_vec(),
        });
    }
    let m_mu = mu.mult_semistandard(d);
    let m_alpha = alpha.mult_semistandard(d);
    if m_mu == 0 {
        return Err(Error::ZeroMultiplicity(mu.parts().to_vec(), d));
    }
    if m_alpha == 0 {
        return Err(Error::ZeroMultiplicity(alpha.parts().to_vec(), d));
    }
    let k = mu.size() as f64;
    Ok(k * m_mu as f64 * alpha.dim_standard() as f64 / (m_alpha as f64 * mu.dim_standard() as f64))
}

/// `F_μ(α)` on `k + 1` factors of dimension `d`, the last being `A`.
///
/// `F = γ⁻¹ (P_μ⊗1) Σ_a V_{(a,k)} (P_α ⊗ V^{t_A}_{(k,A)}) V_{(a,k)} (P_μ⊗1)`,
/// where `(a,k)` swaps factor `a` with the last of the first `k`.
pub fn f_projector(mu: &Partition, alpha: &Partition, d: usize) -> Result<Operator> {
    f_projector_within(mu, alpha, d, &Limits::DEFAULT)
}

pub fn f_projector_within(
    mu: &Partition,
    alpha: &Partition,
    d: usize,
    limits: &Limits,
) -> Result<Operator> {
    let g = gamma(mu, alpha, d)?;
    let k = mu.size();
    pow_within(d, k + 1, limits.max_operator_dim)?;

    let p_alpha = young_projector_within(alpha, d, limits)?;
    let core = p_alpha.kron_within(&transposed_swap(d)?, limits)?;

    let mut inner = Operator::zeros(SubsystemLayout::uniform(d, k + 1));
    for a in 0..k {
        let v = PermutationAction::new(&Permutation::transposition(k + 1, a, k - 1)?, d)?;
        let term = Operator::new(v.conjugate(core.matrix()), inner.layout().clone())?;
        inner.axpy(1.0, &term);
    }

    let p_mu = young_projector_within(mu, d, limits)?
        .kron_within(&Operator::identity(SubsystemLayout::single(d)), limits)?;
    let f = p_mu.try_matmul(&inner)?.try_matmul(&p_mu)?;
    Ok(f.scale(1.0 / g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::max_entangled_state;

    #[test]
    fn single_copy_gives_bell_projector() {
        for d in 1..4 {
            let f = f_projector(&Partition::row(1), &Partition::empty(), d).unwrap();
            let bell = max_entangled_state(d).unwrap().projector();
            assert!(f.distance(&bell) < 1e-13);
        }
    }

    #[test]
    fn transposed_swap_is_scaled_bell_projector() {
        for d in 1..5 {
            let bell = max_entangled_state(d).unwrap().projector().scale(d as f64);
            assert!(transposed_swap(d).unwrap().distance(&bell) < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        let mu = Partition::new(vec![2, 1]).unwrap();
        assert!(f_projector(&mu, &Partition::column(2), 3).is_ok());
        assert!(matches!(
            f_projector(&mu, &Partition::row(3), 2),
            Err(Error::NotABoxRemoval { .. })
        ));
        assert!(matches!(
            f_projector(&Partition::column(3), &Partition::column(2), 2),
            Err(Error::ZeroMultiplicity(..))
        ));
    }
}
