//! Dense simulation, noisy shots and distribution metrics.

mod dense;
mod metrics;
mod noisy;
mod state;

pub use dense::{
    circuit_full_unitary, circuit_unitary, exact_unitary, expm_hermitian, hamiltonian_matrix,
    normalized_fidelity, pauli_matrix, process_fidelity, DenseUnitary, DENSE_CEILING,
};
pub use metrics::{hellinger, total_variation, Hellinger};
pub use noisy::{born_distribution, run_noisy, Distribution, NoiseConfig};
pub use state::StateVector;

/// Summary of one simulated configuration.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SimReport {
    pub strategy: String,
    pub process_fidelity: Option<f64>,
    pub normalized_fidelity: Option<f64>,
    pub cnots_pre: usize,
    pub cnots_post: usize,
    pub hellinger: Option<Hellinger>,
    pub seed: Option<u64>,
    pub rng: &'static str,
}
