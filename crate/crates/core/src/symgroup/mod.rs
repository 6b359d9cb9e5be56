//! Representation numerics of the symmetric group acting on `(C^d)^{⊗k}`.

mod character;
mod fproj;
mod partition;
mod projector;

pub use character::{character, character_of_class};
pub use fproj::{f_projector, f_projector_within, gamma, transposed_swap};
pub use partition::{partitions, Partition};
pub use projector::{
    sym_basis, sym_projector, sym_projector_within, young_projector, young_projector_within,
    IrrepData, SymBasis,
};
