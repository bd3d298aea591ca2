//! Dense complex linear algebra, entropies and seeded sampling.

pub mod density;
pub mod entropy;
pub mod matrix;
pub mod rng;
pub mod sample;
pub mod spectrum;
pub mod weighted;

pub use density::{
    eigen_spectrum, partial_trace, partial_trace_multi, tensor, BipartiteState, DensityMatrix,
    Keep, STATE_TOL,
};
pub use entropy::{
    binary_entropy, entropy, relative_entropy, trace_norm_distance, von_neumann_entropy,
};
pub use matrix::{fourier_matrix, hermitian_eigen, ComplexMatrix, HermitianEigen};
pub use rng::Rng;
pub use sample::{random_density, random_density_any_rank, random_product, random_pure, random_unitary};
pub use spectrum::Spectrum;
pub use weighted::{tensor_power_spectrum, Atom, WeightedSpectrum};
