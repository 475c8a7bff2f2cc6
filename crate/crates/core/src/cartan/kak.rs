//! Numerical `K₁ · exp(c₁G₁₁ + c₂G₂₂ + c₃G₃₃) · K₂` decomposition of `U(4)`.
//!
//! `Q` carries `SU(2) ⊗ SU(2)` onto `SO(4)` and diagonalizes every `G_kk`,
//! so in that basis the problem becomes a real orthogonal diagonalization of
//! the symmetric unitary `UᵀU`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::{generator_matrix, GeneratorIndex};
use crate::oracle::{c64, eig_hermitian, ComplexMatrix, C64};

use super::{compose_factorization, q_matrix, Factor, FactorTerm, Factorization};

/// Input unitarity and reconstruction tolerance.
pub const KAK_TOL: f64 = 1e-9;
/// Eigenvalues of `Re UᵀU` closer than this are treated as one cluster.
const CLUSTER_TOL: f64 = 1e-6;
/// Largest off-diagonal entry allowed after simultaneous diagonalization.
const DIAG_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct KakDecomposition {
    /// `[K₁, exp(Σ c_k G_kk), K₂]` with the global phase.
    pub factorization: Factorization,
    /// Middle coefficients as used in the reconstruction.
    pub raw: [f64; 3],
    /// Middle coefficients reduced by the local-equivalence symmetries.
    pub canonical: [f64; 3],
    /// `max |compose(factorization) - u|`.
    pub residual: f64,
}

impl KakDecomposition {
    /// True when the middle factor is local up to phase.
    pub fn is_local(&self, tol: f64) -> bool {
        self.canonical.iter().all(|c| c.abs() < tol)
    }
}

/// `diag(Q† mat(G_kk) Q) / i` for `k = 1, 2, 3`.
fn middle_weights() -> [[f64; 4]; 3] {
    let q = q_matrix();
    let mut out = [[0.0; 4]; 3];
    for (k, row) in out.iter_mut().enumerate() {
        let g = generator_matrix(GeneratorIndex::new(k + 1, k + 1).expect("valid"));
        let d = &(&q.dagger() * &g) * &q;
        for (j, w) in row.iter_mut().enumerate() {
            *w = d.get(j, j).im;
        }
    }
    out
}

/// Real orthogonal `P` with `Pᵀ M P` diagonal for a complex symmetric
/// unitary `M`, whose real and imaginary parts commute.
fn simultaneous_diagonalizer(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let re = m.map(|z| c64(z.re, 0.0));
    let im = m.map(|z| c64(z.im, 0.0));
    let ea = eig_hermitian(&re)?;
    let v = ea.vectors.map(|z| c64(z.re, 0.0));
    let mut p = ComplexMatrix::zeros(4, 4);
    let mut start = 0;
    while start < 4 {
        let mut end = start + 1;
        while end < 4 && ea.values[end] - ea.values[end - 1] < CLUSTER_TOL {
            end += 1;
        }
        let vc = ComplexMatrix::from_fn(4, end - start, |i, j| v.get(i, start + j));
        let bc = &(&vc.transpose() * &im) * &vc;
        let w = eig_hermitian(&bc)?.vectors.map(|z| c64(z.re, 0.0));
        let cols = &vc * &w;
        for j in 0..end - start {
            for i in 0..4 {
                p.set(i, start + j, cols.get(i, j));
            }
        }
        start = end;
    }
    // re-orthonormalize; the cluster solves can leave O(ε) drift
    for j in 0..4 {
        for k in 0..j {
            let d: f64 = (0..4).map(|i| p.get(i, k).re * p.get(i, j).re).sum();
            for i in 0..4 {
                p.set(i, j, p.get(i, j) - p.get(i, k) * d);
            }
        }
        let n: f64 = (0..4).map(|i| p.get(i, j).norm_sqr()).sum::<f64>().sqrt();
        for i in 0..4 {
            p.set(i, j, p.get(i, j) / n);
        }
    }
    if p.det()?.re < 0.0 {
        for i in 0..4 {
            p.set(i, 0, -p.get(i, 0));
        }
    }
    let d = &(&p.transpose() * m) * &p;
    let off = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| d.get(i, j).norm())
        .fold(0.0, f64::max);
    if off > DIAG_TOL {
        return Err(Error::Decomposition(format!(
            "simultaneous diagonalization left off-diagonal {off:.3e}"
        )));
    }
    Ok(p)
}

/// `θ` with `A = exp(i θ·σ)` for `A ∈ SU(2)`.
fn su2_log(a: &ComplexMatrix) -> [f64; 3] {
    let c = 0.5 * (a.get(0, 0).re + a.get(1, 1).re);
    let s = [
        0.5 * (a.get(0, 1).im + a.get(1, 0).im),
        0.5 * (a.get(0, 1).re - a.get(1, 0).re),
        0.5 * (a.get(0, 0).im - a.get(1, 1).im),
    ];
    let sn = s.iter().map(|x| x * x).sum::<f64>().sqrt();
    if sn < 1e-300 {
        return if c > 0.0 { [0.0; 3] } else { [0.0, 0.0, PI] };
    }
    let theta = sn.atan2(c);
    s.map(|x| theta * x / sn)
}

/// Splits a local `K = A ⊗ B` into `A, B ∈ SU(2)`.
fn split_local(k: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let block = |p: usize, q: usize| ComplexMatrix::from_fn(2, 2, |i, j| k.get(2 * p + i, 2 * q + j));
    let (p, q) = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .into_iter()
        .max_by(|x, y| block(x.0, x.1).frobenius().total_cmp(&block(y.0, y.1).frobenius()))
        .expect("four blocks");
    let x = block(p, q);
    let root = x.det().expect("2x2").sqrt();
    let b = x.scale(c64(1.0, 0.0) / root);
    let bd = b.dagger();
    let a = ComplexMatrix::from_fn(2, 2, |r, s| (&bd * &block(r, s)).trace().expect("2x2") * 0.5);
    (a, b)
}

/// Exponent terms for a local factor `A ⊗ B`.
fn local_factor(k: &ComplexMatrix) -> Factor {
    let (a, b) = split_local(k);
    let mut terms = Vec::with_capacity(6);
    for (n, c) in su2_log(&a).into_iter().enumerate() {
        terms.push(FactorTerm::new(GeneratorIndex::new(n + 1, 0).expect("valid"), c));
    }
    for (n, c) in su2_log(&b).into_iter().enumerate() {
        terms.push(FactorTerm::new(GeneratorIndex::new(0, n + 1).expect("valid"), c));
    }
    Factor::new(terms)
}

/// Decomposes `u ∈ U(4)`; the global phase goes into the factorization.
pub fn kak_decompose(u: &ComplexMatrix) -> Result<KakDecomposition> {
    if u.rows() != 4 || u.cols() != 4 {
        return Err(Error::DimensionMismatch(format!("expected 4x4, got {}x{}", u.rows(), u.cols())));
    }
    let dev = u.unitarity_deviation();
    if dev.is_nan() || dev > KAK_TOL {
        return Err(Error::NotUnitary(dev));
    }
    let phase0 = u.det()?.arg() / 4.0;
    let us = u.scale(c64(phase0.cos(), -phase0.sin()));
    let q = q_matrix();
    let qd = q.dagger();
    let up = &(&qd * &us) * &q;
    let m2 = &up.transpose() * &up;
    let p = simultaneous_diagonalizer(&m2)?;
    let d = &(&p.transpose() * &m2) * &p;
    let mut theta: [f64; 4] = std::array::from_fn(|j| d.get(j, j).arg() / 2.0);
    let sum: f64 = theta.iter().sum();
    // Σθ is a multiple of π; fold it into θ₄ so that det exp(iθ) = 1
    theta[3] -= (sum / PI).round() * PI;
    let dinv: Vec<C64> = theta.iter().map(|t| c64(t.cos(), -t.sin())).collect();
    let o1 = (&(&up * &p) * &ComplexMatrix::diag(&dinv)).map(|z| c64(z.re, 0.0));
    let k1 = &(&q * &o1) * &qd;
    let k2 = &(&q * &p.transpose()) * &qd;
    let w = middle_weights();
    let raw: [f64; 3] = std::array::from_fn(|k| (0..4).map(|j| w[k][j] * theta[j]).sum::<f64>() / 4.0);
    let middle = Factor::new(
        (0..3)
            .map(|k| FactorTerm::new(GeneratorIndex::new(k + 1, k + 1).expect("valid"), raw[k]))
            .collect(),
    );
    let factorization = Factorization {
        factors: vec![local_factor(&k1), middle, local_factor(&k2)],
        phase: phase0,
    };
    let residual = compose_factorization(&factorization)?.matrix.max_abs_diff(u);
    Ok(KakDecomposition {
        factorization,
        raw,
        canonical: canonicalize(raw),
        residual,
    })
}

/// Reduces middle coefficients using the symmetries that preserve local
/// equivalence: shifts by `π/2`, permutations, and paired sign flips.
/// Result: `π/4 ≥ c₁ ≥ c₂ ≥ |c₃|`, with `c₃ ≥ 0` when `c₁ = π/4`.
pub fn canonicalize(c: [f64; 3]) -> [f64; 3] {
    const EDGE: f64 = 1e-9;
    let reduce = |x: f64| {
        let mut y = x - (x / FRAC_PI_2).round() * FRAC_PI_2;
        if y <= -FRAC_PI_4 + EDGE {
            y += FRAC_PI_2;
        }
        y
    };
    let mut c = c.map(reduce);
    c.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    if c[0] < 0.0 {
        c[0] = -c[0];
        c[2] = -c[2];
    }
    if c[1] < 0.0 {
        c[1] = -c[1];
        c[2] = -c[2];
    }
    if (c[0] - FRAC_PI_4).abs() < EDGE && c[2] < 0.0 {
        c[2] = -c[2];
    }
    c
}

/// Same canonical middle coefficients within `tol`.
pub fn locally_equivalent(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
    let (a, b) = (canonicalize(a), canonicalize(b));
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{phase_equivalent, q_prime_matrix, swap_matrix};
    use crate::oracle::{expm, random_special_unitary, random_unitary, EXPM_TOL};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn local_matrix(rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let a = random_special_unitary(2, rng);
        let b = random_special_unitary(2, rng);
        a.kron(&b)
    }

    #[test]
    fn q_diagonalizes_middle_generators() {
        let q = q_matrix();
        for k in 1..=3 {
            let g = generator_matrix(GeneratorIndex::new(k, k).unwrap());
            let d = &(&q.dagger() * &g) * &q;
            let diag = ComplexMatrix::from_fn(4, 4, |i, j| if i == j { d.get(i, j) } else { c64(0.0, 0.0) });
            assert!(d.max_abs_diff(&diag) < 1e-15);
        }
        // local generators become real
        for g in GeneratorIndex::all().into_iter().filter(|g| g.i() == 0 || g.j() == 0) {
            let d = &(&q.dagger() * &generator_matrix(g)) * &q;
            assert!(d.data().iter().all(|z| z.im.abs() < 1e-15), "{g}");
        }
    }

    #[test]
    fn identity_is_trivial() {
        let k = kak_decompose(&ComplexMatrix::identity(4)).unwrap();
        assert!(k.residual < 1e-12);
        assert!(k.is_local(1e-12));
    }

    #[test]
    fn swap_is_maximal() {
        let k = kak_decompose(&swap_matrix()).unwrap();
        assert!(k.residual < KAK_TOL);
        for c in k.canonical {
            assert!((c - FRAC_PI_4).abs() < 1e-9, "{:?}", k.canonical);
        }
    }

    #[test]
    fn local_unitaries_have_no_middle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let u = local_matrix(&mut rng);
            let k = kak_decompose(&u).unwrap();
            assert!(k.residual < KAK_TOL, "{}", k.residual);
            assert!(k.is_local(1e-9), "{:?}", k.canonical);
        }
    }

    #[test]
    fn random_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let u = random_unitary(4, &mut rng);
            let k = kak_decompose(&u).unwrap();
            assert!(k.residual < KAK_TOL, "{}", k.residual);
        }
    }

    #[test]
    fn recovers_planted_middle() {
        // Brute force: build l1 · exp(Σ c G_kk) · l2 from known pieces.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let c: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.5..1.5));
            let mut h = ComplexMatrix::zeros(4, 4);
            for (k, ck) in c.iter().enumerate() {
                h = &h + &generator_matrix(GeneratorIndex::new(k + 1, k + 1).unwrap()).scale_re(*ck);
            }
            let u = &(&local_matrix(&mut rng) * &expm(&h, EXPM_TOL).unwrap()) * &local_matrix(&mut rng);
            let k = kak_decompose(&u).unwrap();
            assert!(k.residual < KAK_TOL);
            assert!(locally_equivalent(k.raw, c, 1e-8), "{:?} vs {:?}", k.canonical, canonicalize(c));
        }
    }

    #[test]
    fn degenerate_spectra() {
        let cnot = ComplexMatrix::from_real(4, 4, &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.]).unwrap();
        for u in [cnot, q_matrix(), q_prime_matrix(), ComplexMatrix::identity(4).scale_re(-1.0)] {
            let k = kak_decompose(&u).unwrap();
            assert!(k.residual < KAK_TOL, "{}", k.residual);
        }
        let k = kak_decompose(&ComplexMatrix::from_real(4, 4, &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 1., 0., 0., 0., 0., -1.]).unwrap()).unwrap();
        // CZ is locally CNOT: (π/4, 0, 0)
        assert!(locally_equivalent(k.raw, [FRAC_PI_4, 0.0, 0.0], 1e-9), "{:?}", k.canonical);
    }

    #[test]
    fn reconstruction_matches_up_to_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = random_special_unitary(4, &mut rng);
        let k = kak_decompose(&u).unwrap();
        let m = compose_factorization(&k.factorization).unwrap();
        assert!(m.agreement < 1e-10);
        assert!(phase_equivalent(&m.matrix, &u, 1e-9).unwrap().equivalent);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = ComplexMatrix::identity(4).scale_re(2.0);
        assert!(matches!(kak_decompose(&m), Err(Error::NotUnitary(_))));
        assert!(kak_decompose(&ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonicalize([0.0; 3]), [0.0; 3]);
        let c = canonicalize([-0.1, 0.3, FRAC_PI_2 + 0.2]);
        assert!((c[0] - 0.3).abs() < 1e-15 && (c[1] - 0.2).abs() < 1e-15 && (c[2] + 0.1).abs() < 1e-15);
        let s = canonicalize([-FRAC_PI_4, FRAC_PI_4, -FRAC_PI_4]);
        assert!(s.iter().all(|x| (x - FRAC_PI_4).abs() < 1e-15));
    }
}
