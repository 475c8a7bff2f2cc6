//! The seven-set product of commuting exponentials that fills `SU(4)` with
//! one redundant parameter.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::ga::{exp_series, Blade, CheckLine, Multivector, Rotor, Signature, EXP_TOL};
use crate::iso::{singlet_density_printed, GeneratorIndex, TwoQubitAlgebra};
use crate::oracle::singular_values;

use super::pi_printed;

/// Singular values above this count toward the rank.
pub const RANK_TOL: f64 = 1e-8;
/// Required ratio `σ₁₅ / σ₁₆`.
pub const GAP_MIN: f64 = 1e3;
pub const COMMUTE_TOL: f64 = 1e-14;
pub const INVARIANCE_TOL: f64 = 1e-10;
pub const SAMPLE_POINTS: usize = 10;

/// `G · H · G` written out: local, middle, local.
pub const SEQUENCE: [&[(usize, usize)]; 7] = [
    &[(2, 2), (3, 3)],
    &[(1, 0), (0, 1)],
    &[(1, 1), (2, 2), (3, 3)],
    &[(3, 0), (0, 3)],
    &[(1, 1), (2, 2), (3, 3)],
    &[(1, 0), (0, 1)],
    &[(2, 2), (3, 3)],
];

/// The same product with the two adjacent middle `G₃₃` exponents merged.
pub const MERGED_SEQUENCE: [&[(usize, usize)]; 7] = [
    &[(2, 2), (3, 3)],
    &[(1, 0), (0, 1)],
    &[(1, 1), (2, 2)],
    &[(3, 0), (0, 3), (3, 3)],
    &[(1, 1), (2, 2)],
    &[(1, 0), (0, 1)],
    &[(2, 2), (3, 3)],
];

pub fn parameter_count(seq: &[&[(usize, usize)]]) -> usize {
    seq.iter().map(|s| s.len()).sum()
}

fn generators(seq: &[&[(usize, usize)]]) -> Vec<Vec<Multivector>> {
    let alg = TwoQubitAlgebra::adopted();
    seq.iter()
        .map(|set| {
            set.iter()
                .map(|&(i, j)| alg.generator(GeneratorIndex::new(i, j).expect("valid")))
                .collect()
        })
        .collect()
}

fn label(set: &[(usize, usize)]) -> String {
    let names: Vec<String> = set.iter().map(|&(i, j)| format!("G{i}{j}")).collect();
    format!("{{{}}}", names.join(","))
}

/// Largest pairwise bracket inside each set.
pub fn commuting_deviations(seq: &[&[(usize, usize)]]) -> Vec<(String, f64)> {
    seq.iter()
        .zip(generators(seq))
        .map(|(set, gens)| {
            let mut dev: f64 = 0.0;
            for a in 0..gens.len() {
                for b in a + 1..gens.len() {
                    dev = dev.max(gens[a].bracket(&gens[b]).max_abs());
                }
            }
            (label(set), dev)
        })
        .collect()
}

/// `∏ exp(Σ t G)` over the sets, in order.
pub fn compose_sequence(seq: &[&[(usize, usize)]], t: &[f64]) -> Result<Multivector> {
    let gens = generators(seq);
    let mut u = Multivector::one(Signature::g6());
    let mut k = 0;
    for set in &gens {
        let mut b = Multivector::zero(Signature::g6());
        for g in set {
            b = &b + &g.scale(t[k]);
            k += 1;
        }
        u = u.gp(&exp_series(&b, EXP_TOL)?);
    }
    Ok(u)
}

fn even_blades() -> Vec<Blade> {
    (0u32..64).filter(|m| m.count_ones() % 2 == 0).map(Blade).collect()
}

/// Exact derivative of the composition: with each set commuting,
/// `∂U/∂t = F₁ ⋯ (G F_m) ⋯ F₇`. Rows are even-blade coefficients, stored
/// row-major as `32 × params`.
pub fn sequence_jacobian(seq: &[&[(usize, usize)]], t: &[f64]) -> Result<Vec<f64>> {
    let gens = generators(seq);
    let sig = Signature::g6();
    let mut factors = Vec::with_capacity(gens.len());
    let mut k = 0;
    for set in &gens {
        let mut b = Multivector::zero(sig);
        for g in set {
            b = &b + &g.scale(t[k]);
            k += 1;
        }
        factors.push(exp_series(&b, EXP_TOL)?);
    }
    let n = k;
    let blades = even_blades();
    let mut jac = vec![0.0; blades.len() * n];
    let mut col = 0;
    for (m, set) in gens.iter().enumerate() {
        let left = factors[..m].iter().fold(Multivector::one(sig), |acc, f| acc.gp(f));
        let right = factors[m + 1..].iter().fold(Multivector::one(sig), |acc, f| acc.gp(f));
        for g in set {
            let d = left.gp(&g.gp(&factors[m])).gp(&right);
            for (r, &b) in blades.iter().enumerate() {
                jac[r * n + col] = d.coeff(b);
            }
            col += 1;
        }
    }
    Ok(jac)
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobianPoint {
    pub singular_values: Vec<f64>,
    pub rank: usize,
    /// `σ₁₅ / σ₁₆`, infinite when `σ₁₆ = 0`.
    pub gap: f64,
}

pub fn jacobian_point(seq: &[&[(usize, usize)]], t: &[f64]) -> Result<JacobianPoint> {
    let n = parameter_count(seq);
    let sv = singular_values(32, n, &sequence_jacobian(seq, t)?);
    let rank = sv.iter().filter(|&&s| s > RANK_TOL).count();
    let gap = if n >= 16 {
        if sv[15] == 0.0 {
            f64::INFINITY
        } else {
            sv[14] / sv[15]
        }
    } else {
        f64::NAN
    };
    Ok(JacobianPoint {
        singular_values: sv,
        rank,
        gap,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub parameter_count: usize,
    pub commuting: Vec<(String, f64)>,
    pub points: Vec<JacobianPoint>,
    /// Rank of the differential at `t = 0`, where only distinct generators count.
    pub identity_rank: usize,
    pub merged_parameter_count: usize,
    pub merged_ranks: Vec<usize>,
    pub lines: Vec<CheckLine>,
}

impl SequenceReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-PI..PI)).collect()
}

pub fn sequence_fill_check(seed: u64) -> Result<SequenceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = parameter_count(&SEQUENCE);
    let commuting = commuting_deviations(&SEQUENCE);
    let mut points = Vec::with_capacity(SAMPLE_POINTS);
    for _ in 0..SAMPLE_POINTS {
        points.push(jacobian_point(&SEQUENCE, &random_point(&mut rng, n))?);
    }
    let identity_rank = jacobian_point(&SEQUENCE, &vec![0.0; n])?.rank;
    let merged_parameter_count = parameter_count(&MERGED_SEQUENCE);
    let mut merged_ranks = Vec::with_capacity(SAMPLE_POINTS);
    for _ in 0..SAMPLE_POINTS {
        merged_ranks.push(jacobian_point(&MERGED_SEQUENCE, &random_point(&mut rng, merged_parameter_count))?.rank);
    }

    let max_commute = commuting.iter().map(|c| c.1).fold(0.0, f64::max);
    let worst_gap = points.iter().map(|p| p.gap).fold(f64::INFINITY, f64::min);
    let lines = vec![
        CheckLine::new("each set is internally commuting", max_commute, COMMUTE_TOL),
        CheckLine::flag("parameter count is 7 + 2 + 7 = 16", n == 16),
        CheckLine::flag(
            format!("Jacobian rank is 15 at {SAMPLE_POINTS} random points"),
            points.iter().all(|p| p.rank == 15),
        ),
        CheckLine::new("singular-value gap sigma15/sigma16 >= 1e3 (reported as 1e3/gap)", GAP_MIN / worst_gap, 1.0 + f64::EPSILON),
    ];
    Ok(SequenceReport {
        parameter_count: n,
        commuting,
        points,
        identity_rank,
        merged_parameter_count,
        merged_ranks,
        lines,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct InvarianceReport {
    pub lines: Vec<CheckLine>,
}

impl InvarianceReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

/// `Π ρ Π~ = ρ` and `R ρ R~ = ρ` for the singlet under random joint
/// rotations `exp(Σ a_k (G_k0 + G_0k))`.
pub fn singlet_invariance(seed: u64, samples: usize) -> Result<InvarianceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = singlet_density_printed();
    let pi = pi_printed();
    let swapped = pi.gp(&rho).gp(&pi.reverse());
    let alg = TwoQubitAlgebra::adopted();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let mut b = Multivector::zero(Signature::g6());
        for k in 1..=3 {
            let a = rng.gen_range(-PI..PI);
            let joint = &alg.generator(GeneratorIndex::new(k, 0)?) + &alg.generator(GeneratorIndex::new(0, k)?);
            b = &b + &joint.scale(a);
        }
        let r = Rotor::exp(&b)?;
        worst = worst.max(r.conjugate(&rho).max_abs_diff(&rho));
    }
    Ok(InvarianceReport {
        lines: vec![
            CheckLine::new("Pi rho_singlet Pi~ = rho_singlet", swapped.max_abs_diff(&rho), INVARIANCE_TOL),
            CheckLine::new(
                format!("R rho_singlet R~ = rho_singlet for {samples} joint rotations"),
                worst,
                INVARIANCE_TOL,
            ),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{even_to_matrix, generator_matrix};
    use crate::oracle::{expm, ComplexMatrix, EXPM_TOL};

    fn matrix_sequence(seq: &[&[(usize, usize)]], t: &[f64]) -> ComplexMatrix {
        let mut u = ComplexMatrix::identity(4);
        let mut k = 0;
        for set in seq {
            let mut h = ComplexMatrix::zeros(4, 4);
            for &(i, j) in set.iter() {
                h = &h + &generator_matrix(GeneratorIndex::new(i, j).unwrap()).scale_re(t[k]);
                k += 1;
            }
            u = &u * &expm(&h, EXPM_TOL).unwrap();
        }
        u
    }

    #[test]
    fn counts() {
        assert_eq!(parameter_count(&SEQUENCE), 16);
        assert_eq!(parameter_count(&MERGED_SEQUENCE), 15);
    }

    #[test]
    fn sets_commute() {
        for (name, d) in commuting_deviations(&SEQUENCE).into_iter().chain(commuting_deviations(&MERGED_SEQUENCE)) {
            assert!(d < COMMUTE_TOL, "{name}: {d}");
        }
    }

    #[test]
    fn composition_matches_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = random_point(&mut rng, 16);
        let u = compose_sequence(&SEQUENCE, &t).unwrap();
        assert!(even_to_matrix(&u).unwrap().max_abs_diff(&matrix_sequence(&SEQUENCE, &t)) < 1e-12);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        // Central differences through the matrix route, compared in GA
        // coordinates via matrix_to_even.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = random_point(&mut rng, 16);
        let jac = sequence_jacobian(&SEQUENCE, &t).unwrap();
        let blades = even_blades();
        let h = 1e-6;
        for col in 0..16 {
            let (mut tp, mut tm) = (t.clone(), t.clone());
            tp[col] += h;
            tm[col] -= h;
            let d = (&matrix_sequence(&SEQUENCE, &tp) - &matrix_sequence(&SEQUENCE, &tm)).scale_re(0.5 / h);
            let dm = crate::iso::matrix_to_even(&d).unwrap();
            for (r, &b) in blades.iter().enumerate() {
                assert!((jac[r * 16 + col] - dm.coeff(b)).abs() < 1e-7, "col {col} blade {b:?}");
            }
        }
    }

    #[test]
    fn full_check() {
        let r = sequence_fill_check(2024).unwrap();
        assert!(r.pass(), "{:#?}", r.lines);
        assert!(r.identity_rank < 15);
        assert!(r.merged_ranks.iter().all(|&k| k == 15));
    }

    #[test]
    fn singlet_is_invariant() {
        let r = singlet_invariance(9, 20).unwrap();
        assert!(r.pass(), "{:#?}", r.lines);
    }
}
