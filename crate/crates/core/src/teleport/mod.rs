//! The optimal multicopy teleportation measurement and protocol simulation.
//!
//! Alice's registers are `k` copies of the input followed by her half `A` of
//! the shared pair; Bob's half `B` is the last factor of every joint state.

mod measurement;
mod protocol;

pub use measurement::{
    assert_eigendecomposition, build_measurement, build_measurement_within,
    eigendecomposition_report, projector_form, projector_form_factors, projector_form_within,
    r_vectors, r_vectors_within, EigenReport, Measurement, RVector, DENSE_CROSSCHECK_DIM,
};
pub use protocol::{
    simulate, success_probability_formula, theorem_report, verify_theorem, Outcome, TheoremReport,
    DEGENERATE_GUARD,
};

pub(crate) use protocol::{check_input, mean_std, normalize_outcome};
