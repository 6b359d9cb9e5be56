//! Randomized search for feasible measurements beating the optimum.
//!
//! Each trial perturbs `M* = F` by a random Hermitian matrix, twirls it into
//! the commutant of `{V_π ⊗ 1}` (exactly) and `{U^{⊗k} ⊗ Ū}` (Monte Carlo),
//! clips its spectrum into `[0, 1]`, and then restores the equality
//! constraint by shrinking the `PS` block: `M(t) = (1 − tQ) C (1 − tQ)`
//! with `Q` the projector onto `PS`. `0 ≤ M(t) ≤ 1` holds for all `t ∈ [0, 1]`.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::tensor::{
    haar_unitary_matrix, hermitian_eig_matrix, random_hermitian, Matrix, Operator, Permutation,
    PermutationAction,
};

use super::program::ProgramData;

pub const DEFAULT_HAAR_SAMPLES: usize = 200;
/// Margin above `p*` that counts as a counterexample.
pub const FALSIFIER_MARGIN: f64 = 1e-7;
/// Target for `|constraint gap|` after repair.
pub const REPAIR_TOL: f64 = 1e-12;

/// One repaired candidate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Candidate {
    pub seed: u64,
    pub epsilon: f64,
    pub objective: f64,
    pub gap_before_repair: f64,
    pub gap: f64,
    pub repair_t: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FalsifierReport {
    pub d: usize,
    pub k: usize,
    pub trials: usize,
    pub haar_samples: usize,
    pub seed: u64,
    pub p_star: f64,
    pub max_objective: f64,
    pub worst_seed: u64,
    pub max_gap: f64,
}

fn symmetric_twirl(c: &Matrix, k: usize, d: usize) -> Result<Matrix> {
    let mut acc = Matrix::zeros(c.rows(), c.cols());
    let perms: Vec<Permutation> = Permutation::all(k).collect();
    let w = crate::tensor::C64::new(1.0 / perms.len() as f64, 0.0);
    for pi in &perms {
        let act = PermutationAction::new(&pi.extend(k + 1), d)?;
        acc.axpy(w, &act.conjugate(c));
    }
    Ok(acc)
}

fn haar_twirl<R: rand::Rng + ?Sized>(
    c: &Operator,
    k: usize,
    d: usize,
    samples: usize,
    r: &mut R,
) -> Result<Matrix> {
    let mut acc = Matrix::zeros(c.dim(), c.dim());
    let w = crate::tensor::C64::new(1.0 / samples as f64, 0.0);
    for _ in 0..samples {
        let u = haar_unitary_matrix(d, r)?;
        let mut locals = vec![u.clone(); k];
        locals.push(u.conj());
        acc.axpy(w, c.conjugate_by_local(&locals)?.matrix());
    }
    Ok(acc)
}

/// Spectrum clipped into `[0, 1]`.
fn clip_unit_interval(c: &Matrix) -> Result<Matrix> {
    let e = hermitian_eig_matrix(&c.hermitian_part())?;
    Ok(e.reconstruct_with(|x| x.clamp(0.0, 1.0)).hermitian_part())
}

/// `(1 − tQ) C (1 − tQ)`.
fn shrink(c: &Matrix, q: &Matrix, t: f64) -> Matrix {
    let mut s = Matrix::identity(c.rows());
    s.axpy(crate::tensor::C64::new(-t, 0.0), q);
    s.matmul(c).matmul(&s)
}

/// Builds and repairs one perturbed candidate `M* + εH`, `H` of unit norm.
pub fn evaluate_perturbation(
    data: &ProgramData,
    epsilon: f64,
    haar_samples: usize,
    seed: u64,
) -> Result<Candidate> {
    let (d, k) = (data.d, data.k);
    let mut r = rng::from_seed(seed);
    let h = random_hermitian(data.f.dim(), &mut r);
    let mut c = data.f.matrix().clone();
    c.axpy(crate::tensor::C64::new(epsilon, 0.0), &h);

    let c = symmetric_twirl(&c, k, d)?;
    let c = Operator::new(c, data.f.layout().clone())?;
    let c = if haar_samples > 0 {
        haar_twirl(&c, k, d, haar_samples, &mut r)?
    } else {
        c.into_matrix()
    };
    let c = clip_unit_interval(&c)?;
    let candidate = |m: Matrix| Operator::new(m, data.f.layout().clone());

    let gap0 = data.constraint_gap(&candidate(c.clone())?)?;
    let q = data.ps.matrix();
    let (mut t, mut m) = (0.0, c.clone());
    if gap0.abs() > REPAIR_TOL {
        // bisection on the smallest t with |gap(t)| ≤ REPAIR_TOL / 2
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut m_hi = shrink(&c, q, hi);
        for _ in 0..200 {
            if hi - lo < 1e-15 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let m_mid = shrink(&c, q, mid);
            if data.constraint_gap(&candidate(m_mid.clone())?)?.abs() <= 0.5 * REPAIR_TOL {
                hi = mid;
                m_hi = m_mid;
            } else {
                lo = mid;
            }
        }
        t = hi;
        m = m_hi;
    }
    let m = candidate(m.hermitian_part())?;
    let gap = data.constraint_gap(&m)?;
    let e = m.eig()?;
    Ok(Candidate {
        seed,
        epsilon,
        objective: data.objective(&m)?,
        gap_before_repair: gap0,
        gap,
        repair_t: t,
        min_eigenvalue: e.values.first().copied().unwrap_or(0.0),
        max_eigenvalue: e.values.last().copied().unwrap_or(0.0),
    })
}

/// Runs `trials` perturbations with `ε = 10^u`, `u ~ U[−3, 0]`; trial `i`
/// uses seed `derive_seed(seed, i)`.
pub fn perturbation_falsifier(
    d: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<FalsifierReport> {
    perturbation_falsifier_with(&ProgramData::new(d, k)?, trials, DEFAULT_HAAR_SAMPLES, seed)
}

pub fn perturbation_falsifier_with(
    data: &ProgramData,
    trials: usize,
    haar_samples: usize,
    seed: u64,
) -> Result<FalsifierReport> {
    let p_star = data.objective(&data.f)?;
    let mut max_objective = f64::NEG_INFINITY;
    let mut worst_seed = 0;
    let mut max_gap: f64 = 0.0;
    for i in 0..trials {
        let s = rng::derive_seed(seed, i as u64);
        let epsilon = 10f64.powf(-3.0 * rng::from_seed(rng::derive_seed(s, 0)).random::<f64>());
        let c = evaluate_perturbation(data, epsilon, haar_samples, s)?;
        if c.objective > p_star + FALSIFIER_MARGIN {
            return Err(Error::Counterexample {
                seed: s,
                objective: c.objective,
                bound: p_star + FALSIFIER_MARGIN,
            });
        }
        if c.objective > max_objective {
            max_objective = c.objective;
            worst_seed = s;
        }
        max_gap = max_gap.max(c.gap.abs());
    }
    Ok(FalsifierReport {
        d: data.d,
        k: data.k,
        trials,
        haar_samples,
        seed,
        p_star,
        max_objective,
        worst_seed,
        max_gap,
    })
}
