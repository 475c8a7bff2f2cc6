//! The two-qubit model in `G⁺(6,0)`: the fifteen bivector generators, their
//! correspondence with `i σ_i ⊗ σ_j`, states, density operators and the
//! single-qubit `G(3)` layer.
//!
//! Vectors `1..=3` of `G(6)` are `e1..e3` (first qubit) and `4..=6` are
//! `f1..f3` (second qubit).

mod even;
mod generators;
pub mod qubit;
pub mod random;
mod state;
mod verify;

pub use even::{even_to_matrix, matrix_to_even, p3p3, reference_index, TwoQubitAlgebra};
pub use generators::{
    generator_bivector, generator_matrix, GeneratorConvention, GeneratorIndex, GeneratorKind,
};
pub use state::{
    density_from_state, entanglement_entropy, purity_moments, schmidt_hilbert_vector,
    singlet_density_printed, singlet_psi_printed, standard_entropy, state_from_schmidt,
    DensityOperator, LogBase, PurityMoments, SchmidtParams, StateIdeal, PURITY_BOUNDS,
    PURE_MOMENTS,
};
pub use verify::{
    adoption, bivector_coefficients, matrix_coefficients, verify_isomorphism, Adoption,
    IsoReport, ISO_TOL,
};
