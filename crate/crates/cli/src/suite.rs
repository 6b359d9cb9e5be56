//! Per-cell evaluation of the verification suites.

use std::time::Instant;

use mctele::optimality::{lemma5_report, perturbation_falsifier, reduced_optimum};
use mctele::sar::sar_report;
use mctele::teleport::{success_probability_formula, theorem_report};
use mctele::Error;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorem,
    Sweep,
    Lemmas,
    Optimality,
    Sar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub d: usize,
    pub k: usize,
    pub seed: u64,
    pub p_formula: Option<f64>,
    pub p_mean: Option<f64>,
    pub p_std: Option<f64>,
    pub eig_residual: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub status: Status,
    pub seconds: Option<f64>,
    pub detail: Option<String>,
    pub reports: Value,
}

#[derive(Clone, Debug)]
pub struct CellParams {
    pub suite: Suite,
    pub samples: usize,
    pub tol: f64,
    pub d_out: Option<usize>,
    pub kraus_rank: usize,
}

impl Cell {
    fn new(d: usize, k: usize, seed: u64) -> Self {
        Self {
            d,
            k,
            seed,
            p_formula: Some(success_probability_formula(d, k)),
            p_mean: None,
            p_std: None,
            eig_residual: None,
            c1: None,
            c2: None,
            status: Status::Pass,
            seconds: None,
            detail: None,
            reports: json!({}),
        }
    }

    fn fail(&mut self, why: String) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.detail.get_or_insert(why);
    }

    fn absorb_error(&mut self, e: Error) {
        match e {
            Error::Capacity { .. } | Error::Budget { .. } => {
                self.status = Status::Skipped;
                self.detail = Some(e.to_string());
            }
            other => self.fail(other.to_string()),
        }
    }

    fn attach(&mut self, name: &str, report: &impl Serialize) {
        if let Value::Object(map) = &mut self.reports {
            map.insert(
                name.to_string(),
                serde_json::to_value(report).unwrap_or(Value::Null),
            );
        }
    }
}

fn run_theorem(cell: &mut Cell, p: &CellParams) -> Result<(), Error> {
    let r = theorem_report(cell.d, cell.k, p.samples, p.tol, cell.seed)?;
    cell.p_mean = Some(r.p_mean);
    cell.p_std = Some(r.p_std);
    cell.eig_residual = Some(r.eig_residual);
    if !r.pass {
        cell.fail(format!(
            "max |p - p(d,k)| = {:.3e}, min fidelity = {}, worst sample seed {}",
            r.max_p_error, r.min_fidelity, r.worst_seed
        ));
    }
    cell.attach("theorem", &r);
    Ok(())
}

fn run_lemmas(cell: &mut Cell, p: &CellParams) -> Result<(), Error> {
    let r = lemma5_report(cell.d, cell.k)?;
    cell.c1 = Some(r.c1);
    cell.c2 = Some(r.c2);
    if !(r.max_error() <= p.tol && r.off_support <= p.tol) {
        cell.fail(format!("lemma coefficients off by {:.3e}", r.max_error()));
    }
    cell.attach("lemma5", &r);
    Ok(())
}

fn run_optimality(cell: &mut Cell, p: &CellParams) -> Result<(), Error> {
    let r = reduced_optimum(cell.d, cell.k)?;
    cell.p_mean = Some(r.p_star);
    cell.eig_residual = Some(r.measurement_residual);
    let ok = (r.p_star - r.p_formula).abs() <= p.tol
        && r.equality_residual <= p.tol
        && r.measurement_residual <= p.tol
        && r.permutation_covariance <= p.tol
        && r.unitary_covariance <= p.tol;
    if !ok {
        cell.fail(format!(
            "reduced optimum {} vs formula {}",
            r.p_star, r.p_formula
        ));
    }
    cell.attach("reduced_optimum", &r);
    match perturbation_falsifier(cell.d, cell.k, p.samples, cell.seed) {
        Ok(f) => cell.attach("falsifier", &f),
        Err(e @ Error::Counterexample { .. }) => cell.fail(e.to_string()),
        Err(e) => return Err(e),
    }
    Ok(())
}

fn run_sar(cell: &mut Cell, p: &CellParams) -> Result<(), Error> {
    let d_out = p.d_out.unwrap_or(cell.d);
    let r = sar_report(
        cell.d,
        d_out,
        cell.k,
        p.kraus_rank,
        p.samples,
        p.tol,
        cell.seed,
    )?;
    cell.p_mean = Some(r.p_mean);
    cell.p_std = Some(r.p_std);
    if !r.pass {
        cell.fail(format!(
            "max |p - p(d,k)| = {:.3e}, max output error = {:.3e}, channel seed {}, psi seed {}",
            r.max_p_error, r.max_output_error, r.worst_channel_seed, r.worst_psi_seed
        ));
    }
    cell.attach("sar", &r);
    Ok(())
}

pub fn run_cell(d: usize, k: usize, seed: u64, p: &CellParams) -> Cell {
    let start = Instant::now();
    let mut cell = Cell::new(d, k, seed);
    let steps: &[fn(&mut Cell, &CellParams) -> Result<(), Error>] = match p.suite {
        Suite::Theorem => &[run_theorem],
        Suite::Sweep => &[run_theorem, run_lemmas],
        Suite::Lemmas => &[run_lemmas],
        Suite::Optimality => &[run_optimality],
        Suite::Sar => &[run_sar],
    };
    for step in steps {
        if let Err(e) = step(&mut cell, p) {
            cell.absorb_error(e);
        }
        if cell.status == Status::Skipped {
            break;
        }
    }
    cell.seconds = Some(start.elapsed().as_secs_f64());
    cell
}
