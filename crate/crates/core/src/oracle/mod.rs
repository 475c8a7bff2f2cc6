//! Dense complex-matrix ground truth, independent of the multivector code.
//!
//! Sizes here never exceed 16×16, so everything is plain row-major storage
//! with textbook algorithms.

mod eig;
mod expm;
mod matrix;
mod pauli;
mod random;
mod svd;

pub use eig::{eig_hermitian, HermitianEigen};
pub use expm::{expm, EXPM_TOL};
pub use matrix::{c64, ComplexMatrix, MatrixJson, C64};
pub use pauli::{pauli, PauliLabel};
pub use random::{random_special_unitary, random_unitary};
pub use svd::singular_values;
