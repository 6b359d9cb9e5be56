//! Exact dense numerics for multicopy state teleportation.
//!
//! Alice holds `k` copies of an unknown qudit `|ψ⟩` and half of a maximally
//! entangled pair shared with Bob. A single two-outcome measurement on her
//! `k + 1` systems heralds, without any correction on Bob's side, that Bob now
//! holds `|ψ⟩`. This crate builds the optimal measurement, simulates the
//! protocol, and checks the supporting representation theory numerically.
//!
//! Module map:
//!
//! - [`tensor`]: dense complex operators on tensor-product spaces, partial
//!   trace and transpose, permutation operators, Haar sampling.
//! - [`symgroup`]: partitions, characters, Young projectors, the symmetric
//!   subspace and the projectors `F_μ(α)` of the partially transposed
//!   permutation algebra.
//! - [`teleport`]: the optimal measurement in projector and eigenvector form,
//!   protocol simulation and theorem verification.
//! - [`optimality`]: Haar moments, the symmetry-reduced program, and a
//!   randomized falsifier.
//! - [`sar`]: storage and retrieval of quantum channels.

#![forbid(unsafe_code)]

pub mod error;
pub mod limits;
pub mod optimality;
pub mod rng;
pub mod sar;
pub mod symgroup;
pub mod teleport;
pub mod tensor;

pub use error::{Error, Result};
pub use limits::{Limits, Tolerances};
pub use tensor::{Matrix, Operator, Permutation, StateVector, SubsystemLayout, C64};
