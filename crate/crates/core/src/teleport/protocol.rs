use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{pow_within, Limits};
use crate::rng;
use crate::tensor::{
    haar_state, max_entangled_state, Matrix, Operator, StateVector, SubsystemLayout,
};

use super::measurement::{build_measurement, check_dk, eigendecomposition_report, Measurement};

/// Outcomes with probability below this are rejected instead of normalized.
pub const DEGENERATE_GUARD: f64 = 1e-14;

/// `p(d, k) = k / (d (k − 1 + d))`.
pub fn success_probability_formula(d: usize, k: usize) -> f64 {
    let (d, k) = (d as f64, k as f64);
    k / (d * (k - 1.0 + d))
}

/// Heralded outcome of one protocol run.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub probability: f64,
    /// Bob's conditional state, unit trace.
    pub bob_state: Operator,
}

impl Outcome {
    /// `⟨ψ|ρ_B|ψ⟩`.
    pub fn fidelity(&self, psi: &StateVector) -> f64 {
        self.bob_state.expectation(psi.data(), psi.data()).re
    }
}

pub(crate) fn check_input(psi: &StateVector, d: usize) -> Result<()> {
    if psi.dim() != d || psi.layout().num_factors() != 1 {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: psi.dim(),
        });
    }
    if !psi.is_normalized(1e-9) {
        return Err(Error::NotNormalized(psi.norm()));
    }
    Ok(())
}

/// `tr_X(|Ψ⟩⟨Ψ| (M ⊗ 1))` for `Ψ` viewed as the `dim(M) × cols` matrix `W`:
/// the result is `(W† M W)ᵀ`.
pub(crate) fn contract_remainder(m: &Operator, w: &Matrix) -> Matrix {
    w.adjoint().matmul(&m.matrix().matmul(w)).transpose()
}

pub(crate) fn normalize_outcome(unnormalized: Matrix, out_dim: usize) -> Result<Outcome> {
    let p = unnormalized.trace().re;
    if !(p >= DEGENERATE_GUARD) {
        return Err(Error::DegenerateOutcome(p));
    }
    let bob = Operator::new(
        unnormalized.scale_real(1.0 / p),
        SubsystemLayout::single(out_dim),
    )?;
    Ok(Outcome {
        probability: p,
        bob_state: bob,
    })
}

/// Runs the protocol on `|ψ⟩^{⊗k} ⊗ |φ⁺⟩_{AB}` and conditions on success.
pub fn simulate(psi: &StateVector, meas: &Measurement) -> Result<Outcome> {
    let (d, k) = (meas.d, meas.k);
    check_input(psi, d)?;
    pow_within(d, k + 2, Limits::DEFAULT.max_dim)?;
    let joint = psi.tensor_power(k)?.kron(&max_entangled_state(d)?)?;
    let w = Matrix::from_vec(meas.dim(), d, joint.into_data())?;
    normalize_outcome(contract_remainder(&meas.m, &w), d)
}

/// Monte-Carlo check of the success probability and output fidelity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremReport {
    pub d: usize,
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub p_formula: f64,
    pub p_mean: f64,
    pub p_std: f64,
    pub max_p_error: f64,
    pub min_fidelity: f64,
    /// Seed of the sample with the largest deviation.
    pub worst_seed: u64,
    pub eig_residual: f64,
    pub pass: bool,
}

impl TheoremReport {
    pub fn into_result(self) -> Result<Self> {
        if self.pass {
            Ok(self)
        } else {
            Err(Error::Verification(format!(
                "d={}, k={}: max |p - p(d,k)| = {:.3e}, min fidelity = {:.12}, eigendecomposition residual = {:.3e}, worst sample seed {}",
                self.d, self.k, self.max_p_error, self.min_fidelity, self.eig_residual, self.worst_seed
            )))
        }
    }
}

/// Mean and sample standard deviation.
pub(crate) fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Simulates `samples` Haar-random inputs; sample `i` uses seed `derive_seed(seed, i)`.
pub fn theorem_report(
    d: usize,
    k: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<TheoremReport> {
    check_dk(d, k)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let meas = build_measurement(d, k)?;
    let eig = eigendecomposition_report(d, k)?;
    let eig_residual = eig.residual.max(eig.dense_residual.unwrap_or(0.0));
    let p_formula = success_probability_formula(d, k);

    let mut ps = Vec::with_capacity(samples);
    let mut min_fidelity = f64::INFINITY;
    let mut worst = (f64::NEG_INFINITY, 0u64);
    for i in 0..samples {
        let s = rng::derive_seed(seed, i as u64);
        let psi = haar_state(d, &mut rng::from_seed(s))?;
        let out = simulate(&psi, &meas)?;
        let fid = out.fidelity(&psi);
        let deviation = (out.probability - p_formula).abs().max(1.0 - fid);
        if deviation > worst.0 {
            worst = (deviation, s);
        }
        min_fidelity = min_fidelity.min(fid);
        ps.push(out.probability);
    }
    let (p_mean, p_std) = mean_std(&ps);
    let max_p_error = ps.iter().map(|p| (p - p_formula).abs()).fold(0.0, f64::max);
    let pass = max_p_error <= tol && 1.0 - min_fidelity <= tol && eig_residual <= tol;
    Ok(TheoremReport {
        d,
        k,
        samples,
        seed,
        tol,
        p_formula,
        p_mean,
        p_std,
        max_p_error,
        min_fidelity,
        worst_seed: worst.1,
        eig_residual,
        pass,
    })
}

/// [`theorem_report`] that fails with the worst sample's seed.
pub fn verify_theorem(
    d: usize,
    k: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<TheoremReport> {
    theorem_report(d, k, samples, tol, seed)?.into_result()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::SubsystemLayout;

    #[test]
    fn formula_values() {
        assert_eq!(success_probability_formula(2, 2), 1.0 / 3.0);
        assert_eq!(success_probability_formula(3, 1), 1.0 / 9.0);
        assert!((success_probability_formula(4, 3) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn basis_input_single_copy() {
        let meas = build_measurement(2, 1).unwrap();
        let psi = StateVector::basis(SubsystemLayout::single(2), 0);
        let out = simulate(&psi, &meas).unwrap();
        assert!((out.probability - 0.25).abs() < 1e-14);
        assert!(out.bob_state.distance(&psi.projector()) < 1e-14);
    }

    #[test]
    fn rejects_bad_inputs() {
        let meas = build_measurement(2, 1).unwrap();
        let wrong_dim = StateVector::basis(SubsystemLayout::single(3), 0);
        assert!(matches!(
            simulate(&wrong_dim, &meas),
            Err(Error::DimensionMismatch { .. })
        ));
        let unnormalized = StateVector::zeros(SubsystemLayout::single(2));
        assert!(matches!(
            simulate(&unnormalized, &meas),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn zero_measurement_is_degenerate() {
        let mut meas = build_measurement(2, 1).unwrap();
        meas.m = Operator::zeros(meas.m.layout().clone());
        let psi = StateVector::basis(SubsystemLayout::single(2), 1);
        assert!(matches!(
            simulate(&psi, &meas),
            Err(Error::DegenerateOutcome(_))
        ));
    }
}
