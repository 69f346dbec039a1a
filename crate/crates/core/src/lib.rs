//! Term ordering, gate cancellation and simulation for Trotterized
//! Pauli-sum evolution.
//!
//! The usual flow is parse → [`ordering::plan`] → [`circuit::assemble`] →
//! [`circuit::cancel_gates`] → [`sim`]. See `examples/` for each step.

pub mod bench;
pub mod circuit;
pub mod clique;
pub mod error;
pub mod ordering;
pub mod pauli;
pub mod sim;
pub mod tsp;

pub use error::{Error, Result};
pub use pauli::{Hamiltonian, PauliChar, PauliString, WeightedPauliTerm};
