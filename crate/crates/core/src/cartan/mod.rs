//! Cartan decompositions of the bivector algebra from the generator graph,
//! the named factorizations, and numerical KAK.

mod factorization;
mod graph;
mod kak;
mod named;
mod sequence;
mod table;

pub use factorization::{compose_factorization, phase_equivalent, Composed, Factor, FactorTerm, Factorization, PhaseMatch};
pub use graph::{
    cartan_subalgebras, split_from_bipartition, Bipartition, CartanSplit, CartanSubalgebra, GeneratorGraph, SPLIT_TOL,
};
pub use kak::{canonicalize, kak_decompose, locally_equivalent, KakDecomposition, KAK_TOL};
pub use named::{
    cartan_q, cartan_q_prime, cartan_theta, factor_check, pi_printed, q_matrix, q_prime_matrix, q_prime_rotation,
    swap_factorization, swap_matrix, Candidate, FactorCheckReport, FactorTarget, ImaginaryReading, FACTOR_TOL,
};
pub use sequence::{
    commuting_deviations, compose_sequence, jacobian_point, parameter_count, sequence_fill_check, sequence_jacobian,
    singlet_invariance, InvarianceReport, JacobianPoint, SequenceReport, MERGED_SEQUENCE, SEQUENCE,
};
pub use table::{conjugation_table, ConjugationEntry, ConjugationTable, SignedGenerator, TableMismatch, TABLE_TOL};
