//! Optimality of the success probability.
//!
//! The optimum is certified twice: on the two-parameter family the symmetry
//! reduction leaves, and by a randomized search over perturbed feasible
//! measurements.

mod falsifier;
mod program;

pub use falsifier::{
    evaluate_perturbation, perturbation_falsifier, perturbation_falsifier_with, Candidate,
    FalsifierReport, DEFAULT_HAAR_SAMPLES, FALSIFIER_MARGIN, REPAIR_TOL,
};
pub use program::{
    equality_residual, haar_moment_check, lemma5_coefficients, lemma5_report, objective,
    reduced_optimum, HaarMomentReport, Lemma5Report, ProgramData, SdpReport, GRID_FEASIBILITY_TOL,
    GRID_STEP,
};
