//! Storage and retrieval of quantum channels.
//!
//! A channel `C` is stored as its program state `(1 ⊗ C)(|φ⁺⟩⟨φ⁺|)`. To
//! apply it to `|ψ⟩`, the optimal teleportation measurement is performed on
//! `k` copies of `|ψ⟩` and the first half of the program; on success the
//! second half holds `C(|ψ⟩⟨ψ|)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Tolerances;
use crate::rng;
use crate::teleport::{
    build_measurement, check_input, mean_std, normalize_outcome, success_probability_formula,
    Measurement, Outcome,
};
use crate::tensor::{
    haar_state, haar_unitary_matrix, Matrix, Operator, StateVector, SubsystemLayout, C64,
};

/// A CPTP map `L(C^{d_in}) → L(C^{d_out})` given by Kraus operators.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    kraus: Vec<Matrix>,
    d_in: usize,
    d_out: usize,
}

impl Channel {
    /// Validates shapes and `Σ K†K = 1` within the default identity tolerance.
    pub fn new(kraus: Vec<Matrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidArgument("channel needs a Kraus operator".into()))?;
        let (d_out, d_in) = (first.rows(), first.cols());
        if d_in == 0 || d_out == 0 {
            return Err(Error::InvalidArgument(
                "channel dimensions must be positive".into(),
            ));
        }
        for k in &kraus {
            if (k.rows(), k.cols()) != (d_out, d_in) {
                return Err(Error::DimensionMismatch {
                    expected: d_out * d_in,
                    actual: k.rows() * k.cols(),
                });
            }
        }
        let ch = Self { kraus, d_in, d_out };
        let defect = ch.cptp_defect();
        if defect > Tolerances::DEFAULT.identity {
            return Err(Error::NotCptp(defect));
        }
        Ok(ch)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            kraus: vec![Matrix::identity(d)],
            d_in: d,
            d_out: d,
        }
    }

    /// `ρ ↦ U ρ U†`.
    pub fn unitary(u: Matrix) -> Result<Self> {
        Self::new(vec![u])
    }

    /// `ρ ↦ tr(ρ) 1/d`.
    pub fn depolarizing(d: usize) -> Self {
        let s = C64::new(1.0 / (d as f64).sqrt(), 0.0);
        let kraus = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut k = Matrix::zeros(d, d);
                k.set(i, j, s);
                k
            })
            .collect();
        Self {
            kraus,
            d_in: d,
            d_out: d,
        }
    }

    /// `p·A + (1 − p)·B`.
    pub fn mixture(p: f64, a: &Channel, b: &Channel) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "mixing weight {p} outside [0, 1]"
            )));
        }
        if (a.d_in, a.d_out) != (b.d_in, b.d_out) {
            return Err(Error::DimensionMismatch {
                expected: a.d_in * a.d_out,
                actual: b.d_in * b.d_out,
            });
        }
        let mut kraus: Vec<Matrix> = a.kraus.iter().map(|k| k.scale_real(p.sqrt())).collect();
        kraus.extend(b.kraus.iter().map(|k| k.scale_real((1.0 - p).sqrt())));
        Self::new(kraus)
    }

    pub fn kraus(&self) -> &[Matrix] {
        &self.kraus
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    /// `‖Σ K†K − 1‖_F`.
    pub fn cptp_defect(&self) -> f64 {
        let mut acc = Matrix::zeros(self.d_in, self.d_in);
        for k in &self.kraus {
            acc += &k.adjoint().matmul(k);
        }
        acc.distance(&Matrix::identity(self.d_in))
    }

    /// `Σ K ρ K†`.
    pub fn apply(&self, rho: &Matrix) -> Result<Matrix> {
        if rho.rows() != self.d_in || rho.cols() != self.d_in {
            return Err(Error::DimensionMismatch {
                expected: self.d_in,
                actual: rho.rows(),
            });
        }
        let mut out = Matrix::zeros(self.d_out, self.d_out);
        for k in &self.kraus {
            out += &k.matmul(rho).matmul(&k.adjoint());
        }
        Ok(out)
    }
}

/// Channel with a Haar-random Stinespring isometry `C^{d_in} → C^{d_out} ⊗ C^{rank}`.
pub fn random_channel(d_in: usize, d_out: usize, kraus_rank: usize, seed: u64) -> Result<Channel> {
    if kraus_rank == 0 || d_in == 0 || d_out == 0 {
        return Err(Error::InvalidArgument(
            "dimensions and Kraus rank must be positive".into(),
        ));
    }
    let n = d_out * kraus_rank;
    if n < d_in {
        return Err(Error::InvalidArgument(format!(
            "no isometry from dimension {d_in} into {d_out} x {kraus_rank}"
        )));
    }
    let v = haar_unitary_matrix(n, &mut rng::from_seed(seed))?;
    let kraus = (0..kraus_rank)
        .map(|j| Matrix::from_fn(d_out, d_in, |o, i| v.get(o * kraus_rank + j, i)))
        .collect();
    Ok(Channel { kraus, d_in, d_out })
}

/// `(1 ⊗ C)(|φ⁺⟩⟨φ⁺|)` on `C^d ⊗ C^{d_out}`.
#[derive(Clone, Debug)]
pub struct ProgramState {
    pub rho: Operator,
    pub d: usize,
    pub d_out: usize,
}

pub fn store(ch: &Channel) -> Result<ProgramState> {
    let defect = ch.cptp_defect();
    if defect > Tolerances::DEFAULT.identity {
        return Err(Error::NotCptp(defect));
    }
    let (d, d_out) = (ch.d_in, ch.d_out);
    let s = 1.0 / (d as f64).sqrt();
    let mut rho = Matrix::zeros(d * d_out, d * d_out);
    for k in &ch.kraus {
        let v: Vec<C64> = (0..d * d_out)
            .map(|x| k.get(x % d_out, x / d_out) * s)
            .collect();
        rho.add_weighted_projector(1.0, &v);
    }
    Ok(ProgramState {
        rho: Operator::new(rho, SubsystemLayout::new(vec![d, d_out])?)?,
        d,
        d_out,
    })
}

/// `(⟨ψ|^{⊗k} ⊗ 1_A) M (|ψ⟩^{⊗k} ⊗ 1_A)`, as a `d × d` matrix on `A`.
fn conditional_effect(meas: &Measurement, psi_k: &[C64]) -> Matrix {
    let d = meas.d;
    let m = meas.m.matrix();
    let mut n = Matrix::zeros(d, d);
    for (y, &py) in psi_k.iter().enumerate() {
        let py = py.conj();
        if py == C64::new(0.0, 0.0) {
            continue;
        }
        for b in 0..d {
            let row = m.row(y * d + b);
            let mut acc = vec![C64::new(0.0, 0.0); d];
            for (x, &px) in psi_k.iter().enumerate() {
                for (a, slot) in acc.iter_mut().enumerate() {
                    *slot += row[x * d + a] * px;
                }
            }
            for (a, v) in acc.into_iter().enumerate() {
                n.set(b, a, n.get(b, a) + py * v);
            }
        }
    }
    n
}

/// Retrieval with a prebuilt measurement.
pub fn retrieve_with(
    prog: &ProgramState,
    psi: &StateVector,
    meas: &Measurement,
) -> Result<Outcome> {
    if meas.d != prog.d {
        return Err(Error::DimensionMismatch {
            expected: prog.d,
            actual: meas.d,
        });
    }
    check_input(psi, prog.d)?;
    let psi_k = psi.tensor_power(meas.k)?;
    let n = conditional_effect(meas, psi_k.data());
    // out = tr_A((N ⊗ 1) ρ)
    let (d, d_out) = (prog.d, prog.d_out);
    let rho = prog.rho.matrix();
    let out = Matrix::from_fn(d_out, d_out, |o, o2| {
        let mut acc = C64::new(0.0, 0.0);
        for b in 0..d {
            for a in 0..d {
                acc += n.get(b, a) * rho.get(a * d_out + o, b * d_out + o2);
            }
        }
        acc
    });
    normalize_outcome(out, d_out)
}

/// Measures `k` copies of `|ψ⟩` with the program's first half; on success the
/// output is `C(|ψ⟩⟨ψ|)`.
pub fn retrieve(prog: &ProgramState, psi: &StateVector, k: usize) -> Result<Outcome> {
    retrieve_with(prog, psi, &build_measurement(prog.d, k)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SarReport {
    pub d: usize,
    pub d_out: usize,
    pub k: usize,
    pub kraus_rank: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub p_formula: f64,
    pub p_mean: f64,
    pub p_std: f64,
    pub max_p_error: f64,
    /// `max ‖out − C(|ψ⟩⟨ψ|)‖_F`.
    pub max_output_error: f64,
    pub worst_channel_seed: u64,
    pub worst_psi_seed: u64,
    pub pass: bool,
}

impl SarReport {
    pub fn into_result(self) -> Result<Self> {
        if self.pass {
            return Ok(self);
        }
        Err(Error::Verification(format!(
            "d={}→{}, k={}: max |p - p(d,k)| = {:.3e}, max output error = {:.3e}, channel seed {}, psi seed {}",
            self.d, self.d_out, self.k, self.max_p_error, self.max_output_error, self.worst_channel_seed, self.worst_psi_seed
        )))
    }
}

/// Sample `i` draws its channel from `derive_seed2(seed, i, 0)` and its input
/// from `derive_seed2(seed, i, 1)`.
pub fn sar_report(
    d: usize,
    d_out: usize,
    k: usize,
    kraus_rank: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<SarReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let meas = build_measurement(d, k)?;
    let p_formula = success_probability_formula(d, k);
    let mut ps = Vec::with_capacity(samples);
    let mut max_output_error: f64 = 0.0;
    let mut worst = (f64::NEG_INFINITY, 0, 0);
    for i in 0..samples as u64 {
        let (cs, ps_seed) = (rng::derive_seed2(seed, i, 0), rng::derive_seed2(seed, i, 1));
        let ch = random_channel(d, d_out, kraus_rank, cs)?;
        let psi = haar_state(d, &mut rng::from_seed(ps_seed))?;
        let out = retrieve_with(&store(&ch)?, &psi, &meas)?;
        let expected = ch.apply(psi.projector().matrix())?;
        let err = out.bob_state.matrix().distance(&expected);
        let deviation = err.max((out.probability - p_formula).abs());
        if deviation > worst.0 {
            worst = (deviation, cs, ps_seed);
        }
        max_output_error = max_output_error.max(err);
        ps.push(out.probability);
    }
    let (p_mean, p_std) = mean_std(&ps);
    let max_p_error = ps.iter().map(|p| (p - p_formula).abs()).fold(0.0, f64::max);
    Ok(SarReport {
        d,
        d_out,
        k,
        kraus_rank,
        samples,
        seed,
        tol,
        p_formula,
        p_mean,
        p_std,
        max_p_error,
        max_output_error,
        worst_channel_seed: worst.1,
        worst_psi_seed: worst.2,
        pass: max_p_error <= tol && max_output_error <= tol,
    })
}

/// [`sar_report`] that fails naming the offending channel and input seeds.
pub fn verify_sar(
    d: usize,
    d_out: usize,
    k: usize,
    kraus_rank: usize,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<SarReport> {
    sar_report(d, d_out, k, kraus_rank, samples, tol, seed)?.into_result()
}
