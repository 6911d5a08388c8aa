//! Exact statevector backend.

mod evolve;
mod schmidt;
mod state;

pub use evolve::{dense_matrix, exact_evolve, KrylovPropagator, SpectralPropagator, SPECTRAL_LIMIT};
pub use schmidt::{
    contiguous_entropies, entanglement_entropy, max_entropy, region_entropy, root_sum, schmidt_spectrum, CutMode,
    SchmidtSpectrum, LAMBDA_FLOOR,
};
pub use state::{commutator_action, commutator_expectation, state_distance, DenseState, ProductPattern, DENSE_LIMIT};

pub(crate) use state::check_dense_limit;
