//! Dense complex linear algebra over tensor-product qudit spaces.

mod eig;
mod haar;
mod layout;
mod matrix;
mod operator;
mod perm;
mod state;

pub use eig::{hermitian_eig, hermitian_eig_matrix, low_rank_difference_norm, thin_qr, Eigen};
pub use haar::{ginibre, haar_state, haar_unitary, haar_unitary_matrix, random_hermitian};
pub use layout::SubsystemLayout;
pub use matrix::{Matrix, C64};
pub use operator::Operator;
pub use perm::{
    permutation_operator, permutation_operator_within, AllPermutations, Permutation,
    PermutationAction,
};
pub use state::{max_entangled_state, StateVector};
