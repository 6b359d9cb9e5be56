//! The Haar-averaged program over measurements `M` on `(C^d)^{⊗k} ⊗ C^d_A`:
//! maximize `(1/d) tr((P^sym⊗1) M)/m_k` subject to
//! `tr((P^sym⊗1) M)/m_k = tr(X M)/m_{k+1}` with `X = (P^sym_{k+1})^{t_A}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::symgroup::{f_projector, sym_projector, Partition};
use crate::teleport::{build_measurement, success_probability_formula};
use crate::tensor::{
    haar_state, haar_unitary_matrix, Matrix, Operator, Permutation, PermutationAction,
    SubsystemLayout,
};

fn check_layout(m: &Operator, d: usize, k: usize) -> Result<()> {
    let expected = SubsystemLayout::uniform(d, k + 1);
    if m.layout() != &expected {
        return Err(Error::LayoutMismatch(
            expected.dims().to_vec(),
            m.layout().dims().to_vec(),
        ));
    }
    Ok(())
}

/// Operators shared by every evaluation of the program at one `(d, k)`.
#[derive(Clone, Debug)]
pub struct ProgramData {
    pub d: usize,
    pub k: usize,
    /// `P^sym_{1…k} ⊗ 1_A`.
    pub psym: Operator,
    /// `(P^sym_{1…k,A})^{t_A}`.
    pub x: Operator,
    /// `F_{sym_k}(sym_{k−1})`.
    pub f: Operator,
    /// `P^sym ⊗ 1_A − F`.
    pub ps: Operator,
    pub m_k: f64,
    pub m_k1: f64,
}

impl ProgramData {
    pub fn new(d: usize, k: usize) -> Result<Self> {
        if d == 0 || k == 0 {
            return Err(Error::InvalidArgument(format!(
                "need d >= 1 and k >= 1, got d={d}, k={k}"
            )));
        }
        let psym = sym_projector(k, d)?.kron(&Operator::identity(SubsystemLayout::single(d)))?;
        let x = sym_projector(k + 1, d)?.partial_transpose(&[k])?;
        let f = f_projector(&Partition::row(k), &Partition::row(k - 1), d)?;
        let ps = &psym - &f;
        Ok(Self {
            d,
            k,
            psym,
            x,
            f,
            ps,
            m_k: Partition::row(k).mult_semistandard(d) as f64,
            m_k1: Partition::row(k + 1).mult_semistandard(d) as f64,
        })
    }

    pub fn objective(&self, m: &Operator) -> Result<f64> {
        check_layout(m, self.d, self.k)?;
        Ok(self.psym.trace_product(m).re / (self.m_k * self.d as f64))
    }

    /// Signed `lhs − rhs` of the equality constraint.
    pub fn constraint_gap(&self, m: &Operator) -> Result<f64> {
        check_layout(m, self.d, self.k)?;
        Ok(self.psym.trace_product(m).re / self.m_k - self.x.trace_product(m).re / self.m_k1)
    }
}

/// `(1/d) tr((P^sym_{1…k}/m_{sym_k} ⊗ 1_A) M)`.
pub fn objective(m: &Operator, d: usize, k: usize) -> Result<f64> {
    check_layout(m, d, k)?;
    let psym = sym_projector(k, d)?.kron(&Operator::identity(SubsystemLayout::single(d)))?;
    let m_k = Partition::row(k).mult_semistandard(d) as f64;
    Ok(psym.trace_product(m).re / (m_k * d as f64))
}

/// `|tr((P^sym⊗1) M)/m_{sym_k} − tr((P^sym_{1…k,A})^{t_A} M)/m_{sym_{k+1}}|`.
pub fn equality_residual(m: &Operator, d: usize, k: usize) -> Result<f64> {
    check_layout(m, d, k)?;
    let psym = sym_projector(k, d)?.kron(&Operator::identity(SubsystemLayout::single(d)))?;
    let x = sym_projector(k + 1, d)?.partial_transpose(&[k])?;
    let m_k = Partition::row(k).mult_semistandard(d) as f64;
    let m_k1 = Partition::row(k + 1).mult_semistandard(d) as f64;
    Ok((psym.trace_product(m).re / m_k - x.trace_product(m).re / m_k1).abs())
}

/// Distance of the empirical `k`-th moment of Haar states from `P^sym/m_{sym_k}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HaarMomentReport {
    pub d: usize,
    pub k: usize,
    pub samples: usize,
    pub monte_carlo_residual: f64,
    /// `‖P^sym (P^sym/m) − P^sym/m‖_F`.
    pub exact_residual: f64,
}

pub fn haar_moment_check(
    k: usize,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<HaarMomentReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let psym = sym_projector(k, d)?;
    let m = Partition::row(k).mult_semistandard(d) as f64;
    let target = psym.scale(1.0 / m);
    let dim = psym.dim();
    let mut acc = Matrix::zeros(dim, dim);
    let mut r = rng::from_seed(seed);
    for _ in 0..samples {
        let v = haar_state(d, &mut r)?.tensor_power(k)?;
        acc.add_weighted_projector(1.0 / samples as f64, v.data());
    }
    let monte_carlo_residual = acc.distance(target.matrix());
    let exact_residual = psym.try_matmul(&target)?.distance(&target);
    Ok(HaarMomentReport {
        d,
        k,
        samples,
        monte_carlo_residual,
        exact_residual,
    })
}

/// Projection of `(P^sym_{1…k,A})^{t_A}` onto `F` and `PS`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lemma5Report {
    pub d: usize,
    pub k: usize,
    pub c1: f64,
    pub c2: f64,
    /// `(d+k)/(k+1)`, the value the derivation produces.
    pub c1_expected: f64,
    /// `1/(k+1)`.
    pub c2_expected: f64,
    /// `(d+k)/k`, the coefficient as printed in the lemma statement.
    pub c1_as_stated: f64,
    /// `‖Π X Π − c1 F − c2 PS‖_F` with `Π = F + PS`.
    pub residual: f64,
    /// `‖X − Π X Π‖_F`.
    pub off_support: f64,
    pub note: String,
}

impl Lemma5Report {
    pub fn max_error(&self) -> f64 {
        (self.c1 - self.c1_expected)
            .abs()
            .max((self.c2 - self.c2_expected).abs())
            .max(self.residual)
    }
}

pub fn lemma5_report(d: usize, k: usize) -> Result<Lemma5Report> {
    let data = ProgramData::new(d, k)?;
    lemma5_from(&data)
}

pub(crate) fn lemma5_from(data: &ProgramData) -> Result<Lemma5Report> {
    let (d, k) = (data.d, data.k);
    let tr_f = data.f.trace().re;
    let tr_ps = data.ps.trace().re;
    if tr_ps.abs() < 0.5 {
        return Err(Error::InvalidArgument(format!(
            "the complement of F is empty at d={d}, k={k}; the second coefficient is undefined"
        )));
    }
    let c1 = data.x.trace_product(&data.f).re / tr_f;
    let c2 = data.x.trace_product(&data.ps).re / tr_ps;
    let pi = &data.f + &data.ps;
    let projected = pi.try_matmul(&data.x)?.try_matmul(&pi)?;
    let mut model = data.f.scale(c1);
    model.axpy(c2, &data.ps);
    let residual = projected.distance(&model);
    let off_support = data.x.distance(&projected);
    let (df, kf) = (d as f64, k as f64);
    let c1_as_stated = (df + kf) / kf;
    let c1_expected = (df + kf) / (kf + 1.0);
    Ok(Lemma5Report {
        d,
        k,
        c1,
        c2,
        c1_expected,
        c2_expected: 1.0 / (kf + 1.0),
        c1_as_stated,
        residual,
        off_support,
        note: format!(
            "statement coefficient (d+k)/k = {c1_as_stated:.6} differs from the derived (d+k)/(k+1) = {c1_expected:.6}; \
             the projection gives c1 = {c1:.6}"
        ),
    })
}

/// [`lemma5_report`], failing if the coefficients or the decomposition miss `tol`.
pub fn lemma5_coefficients(d: usize, k: usize, tol: f64) -> Result<Lemma5Report> {
    let r = lemma5_report(d, k)?;
    if !(r.max_error() <= tol) {
        return Err(Error::Verification(format!(
            "d={d}, k={k}: c1={:.12}, c2={:.12}, residual={:.3e} (tolerance {tol:.1e})",
            r.c1, r.c2, r.residual
        )));
    }
    Ok(r)
}

/// Optimum of the two-parameter family `M(a1, a2) = a1 F + a2 PS`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SdpReport {
    pub d: usize,
    pub k: usize,
    pub a1: f64,
    pub a2: f64,
    pub p_star: f64,
    pub p_formula: f64,
    /// Objective of `M(a1*, a2*)`.
    pub objective: f64,
    /// Equality-constraint residual of `M(a1*, a2*)`.
    pub equality_residual: f64,
    /// Constraint gap per unit of `a1` and of `a2`.
    pub gap_f: f64,
    pub gap_ps: f64,
    pub grid_a1: f64,
    pub grid_a2: f64,
    pub grid_p: f64,
    pub grid_step: f64,
    /// `max_π ‖(V_π⊗1) M (V_π⊗1)† − M‖_F`.
    pub permutation_covariance: f64,
    /// `max_U ‖(U^{⊗k}⊗Ū) M (U^{⊗k}⊗Ū)† − M‖_F` over a few Haar samples.
    pub unitary_covariance: f64,
    /// `‖F − Σ_i |r_i⟩⟨r_i|‖_F`.
    pub measurement_residual: f64,
}

/// Feasibility tolerance of the grid search on the constraint gap.
pub const GRID_FEASIBILITY_TOL: f64 = 1e-10;
pub const GRID_STEP: f64 = 1e-3;

pub fn reduced_optimum(d: usize, k: usize) -> Result<SdpReport> {
    let data = ProgramData::new(d, k)?;
    reduced_optimum_from(&data)
}

pub(crate) fn reduced_optimum_from(data: &ProgramData) -> Result<SdpReport> {
    let (d, k) = (data.d, data.k);
    let obj_f = data.objective(&data.f)?;
    let obj_ps = data.objective(&data.ps)?;
    let gap_f = data.constraint_gap(&data.f)?;
    let gap_ps = data.constraint_gap(&data.ps)?;

    // The gap is linear: a1 gap_f + a2 gap_ps = 0 with gap_f ≈ 0 and
    // gap_ps > 0 forces a2 = 0 unless PS vanishes (d = 1).
    let a2 = if gap_ps.abs() > GRID_FEASIBILITY_TOL {
        (-gap_f / gap_ps).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let a2 = if a2 <= GRID_FEASIBILITY_TOL { 0.0 } else { a2 };
    let a1 = if obj_f > 0.0 { 1.0 } else { 0.0 };
    let mut m_opt = data.f.scale(a1);
    m_opt.axpy(a2, &data.ps);
    let objective = data.objective(&m_opt)?;
    let equality_residual = data.constraint_gap(&m_opt)?.abs();
    let p_star = a1 * obj_f + a2 * obj_ps;

    let steps = (1.0 / GRID_STEP).round() as usize;
    let mut best: Option<(f64, f64, f64)> = None;
    for i in 0..=steps {
        let b1 = i as f64 * GRID_STEP;
        for j in 0..=steps {
            let b2 = j as f64 * GRID_STEP;
            if (b1 * gap_f + b2 * gap_ps).abs() > GRID_FEASIBILITY_TOL {
                continue;
            }
            let p = b1 * obj_f + b2 * obj_ps;
            // ties keep the smaller a2, then the smaller a1
            if best.is_none_or(|(bp, _, _)| p > bp + 1e-15) {
                best = Some((p, b1, b2));
            }
        }
    }
    let (grid_p, grid_a1, grid_a2) =
        best.ok_or_else(|| Error::Numerical("no feasible grid point".into()))?;
    if (grid_p - p_star).abs() > 1e-6 || (grid_a1 - a1).abs() > 1e-6 || (grid_a2 - a2).abs() > 1e-6
    {
        return Err(Error::Verification(format!(
            "grid optimum ({grid_a1}, {grid_a2}, {grid_p}) deviates from ({a1}, {a2}, {p_star}) at d={d}, k={k}"
        )));
    }

    let mut permutation_covariance: f64 = 0.0;
    for pi in Permutation::all(k) {
        let act = PermutationAction::new(&pi.extend(k + 1), d)?;
        permutation_covariance =
            permutation_covariance.max(act.conjugate(m_opt.matrix()).distance(m_opt.matrix()));
    }
    let mut unitary_covariance: f64 = 0.0;
    let mut r = rng::from_seed(rng::derive_seed2(0x5EED, d as u64, k as u64));
    for _ in 0..5 {
        let u = haar_unitary_matrix(d, &mut r)?;
        let mut locals = vec![u.clone(); k];
        locals.push(u.conj());
        unitary_covariance =
            unitary_covariance.max(m_opt.conjugate_by_local(&locals)?.distance(&m_opt));
    }
    let built = build_measurement(d, k)?;
    let measurement_residual = data.f.distance(&built.m);

    Ok(SdpReport {
        d,
        k,
        a1,
        a2,
        p_star,
        p_formula: success_probability_formula(d, k),
        objective,
        equality_residual,
        gap_f,
        gap_ps,
        grid_a1,
        grid_a2,
        grid_p,
        grid_step: GRID_STEP,
        permutation_covariance,
        unitary_covariance,
        measurement_residual,
    })
}
