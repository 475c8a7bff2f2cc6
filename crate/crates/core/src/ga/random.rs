//! Random elements for property sweeps. Coefficients are uniform in `[-1, 1)`.

use rand::Rng;

use super::{Blade, Multivector, Signature};

fn coeff<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-1.0..1.0)
}

/// Dense multivector with every blade populated.
pub fn multivector<R: Rng + ?Sized>(sig: Signature, rng: &mut R) -> Multivector {
    let terms: Vec<_> = (0..sig.algebra_dim() as u32)
        .map(|m| (Blade(m), coeff(rng)))
        .collect();
    Multivector::from_terms(sig, terms).expect("masks are in range")
}

/// Dense element of grade `r`.
pub fn homogeneous<R: Rng + ?Sized>(sig: Signature, r: usize, rng: &mut R) -> Multivector {
    let terms: Vec<_> = (0..sig.algebra_dim() as u32)
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (Blade(m), coeff(rng)))
        .collect();
    Multivector::from_terms(sig, terms).expect("masks are in range")
}

pub fn vector<R: Rng + ?Sized>(sig: Signature, rng: &mut R) -> Multivector {
    homogeneous(sig, 1, rng)
}

pub fn bivector<R: Rng + ?Sized>(sig: Signature, rng: &mut R) -> Multivector {
    homogeneous(sig, 2, rng)
}

/// Dense element of the even subalgebra.
pub fn even<R: Rng + ?Sized>(sig: Signature, rng: &mut R) -> Multivector {
    let terms: Vec<_> = (0..sig.algebra_dim() as u32)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| (Blade(m), coeff(rng)))
        .collect();
    Multivector::from_terms(sig, terms).expect("masks are in range")
}

/// An `r`-blade: outer product of `r` random vectors.
pub fn blade<R: Rng + ?Sized>(sig: Signature, r: usize, rng: &mut R) -> Multivector {
    (0..r).fold(Multivector::one(sig), |acc, _| acc.wedge(&vector(sig, rng)))
}
