use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{pow_within, Limits};
use crate::symgroup::{sym_basis, sym_projector_within, Partition};
use crate::tensor::{
    low_rank_difference_norm, max_entangled_state, Matrix, Operator, Permutation,
    PermutationAction, StateVector, SubsystemLayout, C64,
};

pub(crate) fn check_dk(d: usize, k: usize) -> Result<()> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "need d >= 1 and k >= 1, got d={d}, k={k}"
        )));
    }
    Ok(())
}

/// One eigenvector of the optimal measurement with its `k` summands.
#[derive(Clone, Debug)]
pub struct RVector {
    pub index: usize,
    pub vector: StateVector,
    /// `constituents[a] = (V_{(a,k)} ⊗ 1_A)(|s_i⟩ ⊗ |φ⁺⟩)`, unit norm.
    pub constituents: Vec<StateVector>,
}

/// `|r_i⟩ = √(d/(k(k−1+d))) Σ_a (V_{(a,k)} ⊗ 1_A)(|s_i⟩ ⊗ |φ⁺⟩_{kA})`, one
/// per symmetric basis vector `|s_i⟩` of `k − 1` copies.
pub fn r_vectors(d: usize, k: usize) -> Result<Vec<RVector>> {
    r_vectors_within(d, k, &Limits::DEFAULT)
}

pub fn r_vectors_within(d: usize, k: usize, limits: &Limits) -> Result<Vec<RVector>> {
    check_dk(d, k)?;
    pow_within(d, k + 1, limits.max_dim)?;
    let basis = sym_basis(k - 1, d)?;
    let phi = max_entangled_state(d)?;
    let swaps = (0..k)
        .map(|a| PermutationAction::new(&Permutation::transposition(k + 1, a, k - 1)?, d))
        .collect::<Result<Vec<_>>>()?;
    let norm = (d as f64 / (k as f64 * (k - 1 + d) as f64)).sqrt();
    let layout = SubsystemLayout::uniform(d, k + 1);

    basis
        .vectors
        .iter()
        .enumerate()
        .map(|(index, s)| {
            let base = s.kron(&phi)?;
            let constituents: Vec<StateVector> = swaps
                .iter()
                .map(|v| v.apply_state(&base))
                .collect::<Result<_>>()?;
            let mut sum = vec![C64::new(0.0, 0.0); layout.total_dim()];
            for c in &constituents {
                for (x, &y) in sum.iter_mut().zip(c.data()) {
                    *x += y * norm;
                }
            }
            Ok(RVector {
                index,
                vector: StateVector::new(sum, layout.clone())?,
                constituents,
            })
        })
        .collect()
}

/// The heralding POVM element `M` on `(C^d)^{⊗k} ⊗ C^d_A`.
#[derive(Clone, Debug)]
pub struct Measurement {
    pub d: usize,
    pub k: usize,
    pub m: Operator,
    pub r_basis: Option<Vec<RVector>>,
}

impl Measurement {
    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    /// Expected rank `C(k−2+d, k−1)`.
    pub fn expected_rank(&self) -> u128 {
        Partition::row(self.k - 1).mult_semistandard(self.d)
    }

    /// `max |⟨r_i|r_j⟩ − δ_ij|` over the cached eigenbasis.
    pub fn gram_defect(&self) -> Option<f64> {
        self.r_basis
            .as_ref()
            .map(|rs| gram_defect(rs.iter().map(|r| &r.vector)))
    }
}

pub(crate) fn gram_defect<'a>(vs: impl Iterator<Item = &'a StateVector> + Clone) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, u) in vs.clone().enumerate() {
        for (j, v) in vs.clone().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((u.inner(v) - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// `M = Σ_i |r_i⟩⟨r_i|`.
pub fn build_measurement(d: usize, k: usize) -> Result<Measurement> {
    build_measurement_within(d, k, &Limits::DEFAULT)
}

pub fn build_measurement_within(d: usize, k: usize, limits: &Limits) -> Result<Measurement> {
    check_dk(d, k)?;
    let dim = pow_within(d, k + 1, limits.max_operator_dim)?;
    let rs = r_vectors_within(d, k, limits)?;
    let mut m = Matrix::zeros(dim, dim);
    for r in &rs {
        m.add_weighted_projector(1.0, r.vector.data());
    }
    Ok(Measurement {
        d,
        k,
        m: Operator::new(m, SubsystemLayout::uniform(d, k + 1))?,
        r_basis: Some(rs),
    })
}

/// `dk/(k−1+d) · (P^sym⊗1_A)(1⊗|φ⁺⟩⟨φ⁺|_{kA})(P^sym⊗1_A)` as a dense product.
pub fn projector_form(d: usize, k: usize) -> Result<Operator> {
    projector_form_within(d, k, &Limits::DEFAULT)
}

pub fn projector_form_within(d: usize, k: usize, limits: &Limits) -> Result<Operator> {
    check_dk(d, k)?;
    pow_within(d, k + 1, limits.max_operator_dim)?;
    let id_a = Operator::identity(SubsystemLayout::single(d));
    let psym = sym_projector_within(k, d, limits)?.kron_within(&id_a, limits)?;
    let rest = Operator::identity(SubsystemLayout::uniform(d, k - 1));
    let bell = rest.kron_within(&max_entangled_state(d)?.projector(), limits)?;
    let c = (d * k) as f64 / (k - 1 + d) as f64;
    Ok(psym.try_matmul(&bell)?.try_matmul(&psym)?.scale(c))
}

/// The projector form as `c Σ_t n_t |w_t⟩⟨w_t|`, `w_t = (P^sym⊗1)|x_t⟩|φ⁺⟩`
/// for one representative string `x_t` of each type of `k − 1` symbols.
///
/// `1 ⊗ |φ⁺⟩⟨φ⁺| = Σ_x |x φ⁺⟩⟨x φ⁺|` and `P^sym` absorbs permutations of
/// `x`, so strings of one type give the same `w`.
pub fn projector_form_factors(d: usize, k: usize) -> Result<Vec<(f64, StateVector)>> {
    check_dk(d, k)?;
    Limits::DEFAULT.check_perm_degree(k)?;
    pow_within(d, k + 1, Limits::DEFAULT.max_dim)?;
    let basis = sym_basis(k - 1, d)?;
    let phi = max_entangled_state(d)?;
    let layout = SubsystemLayout::uniform(d, k + 1);
    let actions = Permutation::all(k)
        .map(|s| PermutationAction::new(&s.extend(k + 1), d))
        .collect::<Result<Vec<_>>>()?;
    let c = (d * k) as f64 / (k - 1 + d) as f64;
    let inv_fact = 1.0 / actions.len() as f64;
    let prefix = SubsystemLayout::uniform(d, k - 1);

    basis
        .strings
        .iter()
        .map(|t| {
            let x = StateVector::basis(prefix.clone(), prefix.index(t));
            let count = basis_type_size(t);
            let v = x.kron(&phi)?;
            let mut w = vec![C64::new(0.0, 0.0); layout.total_dim()];
            for act in &actions {
                for (src, &dst) in act.map().iter().enumerate() {
                    w[dst] += v.data()[src] * inv_fact;
                }
            }
            Ok((c * count, StateVector::new(w, layout.clone())?))
        })
        .collect()
}

/// Number of distinct rearrangements of a sorted string.
fn basis_type_size(sorted: &[usize]) -> f64 {
    let mut count = (1..=sorted.len()).map(|x| x as f64).product::<f64>();
    let mut run = 1;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            count /= (1..=run).map(|x| x as f64).product::<f64>();
            run = 1;
        }
    }
    count
}

/// Agreement of the two constructions of the measurement.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenReport {
    pub d: usize,
    pub k: usize,
    pub rank: usize,
    /// `‖M_projector − Σ|r_i⟩⟨r_i|‖_F`, from factored forms.
    pub residual: f64,
    /// Same residual from dense matrices, when small enough to form.
    pub dense_residual: Option<f64>,
    pub gram_defect: f64,
}

/// Largest dimension at which the dense projector form is also evaluated.
pub const DENSE_CROSSCHECK_DIM: usize = 256;

pub fn eigendecomposition_report(d: usize, k: usize) -> Result<EigenReport> {
    let rs = r_vectors(d, k)?;
    let factors = projector_form_factors(d, k)?;
    let a: Vec<(f64, &[C64])> = factors.iter().map(|(w, v)| (*w, v.data())).collect();
    let b: Vec<(f64, &[C64])> = rs.iter().map(|r| (1.0, r.vector.data())).collect();
    let residual = low_rank_difference_norm(&a, &b);
    let dim = d.pow(k as u32 + 1);
    let dense_residual = if dim <= DENSE_CROSSCHECK_DIM {
        let mut m = Matrix::zeros(dim, dim);
        for r in &rs {
            m.add_weighted_projector(1.0, r.vector.data());
        }
        Some(projector_form(d, k)?.matrix().distance(&m))
    } else {
        None
    };
    Ok(EigenReport {
        d,
        k,
        rank: rs.len(),
        residual,
        dense_residual,
        gram_defect: gram_defect(rs.iter().map(|r| &r.vector)),
    })
}

/// Checks that the projector form equals `Σ_i |r_i⟩⟨r_i|` within `tol`.
pub fn assert_eigendecomposition(d: usize, k: usize, tol: f64) -> Result<EigenReport> {
    let report = eigendecomposition_report(d, k)?;
    let worst = report.residual.max(report.dense_residual.unwrap_or(0.0));
    if worst > tol || !worst.is_finite() {
        return Err(Error::Verification(format!(
            "eigendecomposition residual {worst:.3e} exceeds {tol:.3e} at d={d}, k={k}"
        )));
    }
    Ok(report)
}
