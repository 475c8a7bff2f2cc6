//! Generic real Clifford algebra `G(p,q)`.
//!
//! Elements are stored sparsely, keyed by a basis-blade bitmask: bit `k-1`
//! set means basis vector `k` is a factor. Basis vectors `1..=p` square to
//! `+1`, vectors `p+1..=p+q` square to `-1`.

mod blade;
mod checks;
mod exp;
mod multivector;
mod products;
pub mod random;
mod signature;

pub use blade::{blade_product, Blade};
pub use checks::{dual_relations_check, pseudoscalar, CheckLine, DualRelationsReport};
pub use exp::{exp_even, exp_series, Rotor, EXP_TOL};
pub use multivector::{Multivector, MultivectorJson, TermJson};
pub use products::{
    commutator_half, geometric_product, inner_product, outer_product, PRODUCT_PRUNE,
};
pub use signature::Signature;
