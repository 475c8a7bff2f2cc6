//! Seeded sampling of states and density operators.

use std::f64::consts::PI;

use rand::Rng;

use super::{density_from_state, state_from_schmidt, DensityOperator, SchmidtParams};

/// Unit-magnitude parameters with every angle uniform in `[-π, π)`.
pub fn random_schmidt<R: Rng + ?Sized>(rng: &mut R) -> SchmidtParams {
    let mut a = || rng.gen_range(-PI..PI);
    SchmidtParams {
        rho: 1.0,
        phi: a(),
        phi1: a(),
        phi2: a(),
        theta1: a(),
        theta2: a(),
        tau: a(),
        sigma: a(),
    }
}

pub fn random_pure_density<R: Rng + ?Sized>(rng: &mut R) -> DensityOperator {
    let s = state_from_schmidt(&random_schmidt(rng)).expect("finite parameters");
    density_from_state(&s).expect("unit magnitude")
}

/// Convex combination of one to four random pure states.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> DensityOperator {
    let n = rng.gen_range(1..=4);
    let states: Vec<DensityOperator> = (0..n).map(|_| random_pure_density(rng)).collect();
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0) + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let parts: Vec<(f64, &DensityOperator)> = raw.iter().map(|w| w / total).zip(&states).collect();
    DensityOperator::mixture(&parts).expect("mixture of densities")
}
