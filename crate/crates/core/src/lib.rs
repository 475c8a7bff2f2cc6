//! Real Clifford algebras `G(p,q)` and a two-qubit model built on the even
//! subalgebra of `G(6,0)`.
//!
//! The crate is split into layers that only depend downward:
//!
//! - [`ga`]: sparse multivectors over an arbitrary nondegenerate signature,
//!   with products, involutions, grade machinery and even exponentials.
//! - [`oracle`]: a small dense complex-matrix toolkit (Pauli matrices,
//!   Kronecker products, `expm`, Hermitian eigensolver) used as independent
//!   ground truth.
//! - [`iso`]: the fifteen `G_ij` bivector generators, the bivector ↔
//!   `su(4)` correspondence, state ideals, density operators and Schmidt
//!   parametrization.
//! - [`cartan`]: graph model of the generators, Cartan splits, factorization
//!   composition, conjugation tables and a numeric KAK decomposition.
//! - [`channels`]: the `M_k` Kraus sums and their Choi-matrix checks.
//! - [`selftest`]: the acceptance checks, shared by the test suite and CLI.

#![forbid(unsafe_code)]

pub mod cartan;
pub mod channels;
pub mod error;
pub mod ga;
pub mod iso;
pub mod oracle;
pub mod selftest;
pub mod tables;

pub use error::{Error, Result};
