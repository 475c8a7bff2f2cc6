use crate::error::{Error, Result};

use super::{c64, ComplexMatrix, C64};

const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix: ascending real eigenvalues and
/// the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d: Vec<C64> = self.values.iter().map(|&x| c64(x, 0.0)).collect();
        &(&self.vectors * &ComplexMatrix::diag(&d)) * &self.vectors.dagger()
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

/// Cyclic complex Jacobi. Each rotation is a phase fix `diag(1, e^{-iφ})`
/// that makes the pivot real, followed by a real Givens rotation.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = a.require_square()?;
    let dev = a.hermiticity_deviation();
    if dev.is_nan() || dev > HERMITIAN_TOL * a.max_abs().max(1.0) {
        return Err(Error::NotHermitian(dev));
    }
    // symmetrize so the rotations see an exactly Hermitian input
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| (a.get(i, j) + a.get(j, i).conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = m.frobenius().max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m.get(x, x).re.total_cmp(&m.get(y, y).re));
    let values = order.iter().map(|&k| m.get(k, k).re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok(HermitianEigen { values, vectors })
}

fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = m.get(p, q);
    let r = b.norm();
    if r == 0.0 {
        return;
    }
    let phase = b / r;
    let (a, d) = (m.get(p, p).re, m.get(q, q).re);
    let tau = (d - a) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;
    // J = diag(1, conj(phase)) · [[cs, sn], [-sn, cs]]
    let jpp = c64(cs, 0.0);
    let jpq = c64(sn, 0.0);
    let jqp = phase.conj() * -sn;
    let jqq = phase.conj() * cs;
    let n = m.rows();
    for k in 0..n {
        let (mkp, mkq) = (m.get(k, p), m.get(k, q));
        m.set(k, p, mkp * jpp + mkq * jqp);
        m.set(k, q, mkp * jpq + mkq * jqq);
        let (vkp, vkq) = (v.get(k, p), v.get(k, q));
        v.set(k, p, vkp * jpp + vkq * jqp);
        v.set(k, q, vkp * jpq + vkq * jqq);
    }
    for k in 0..n {
        let (mpk, mqk) = (m.get(p, k), m.get(q, k));
        m.set(p, k, jpp.conj() * mpk + jqp.conj() * mqk);
        m.set(q, k, jpq.conj() * mpk + jqq.conj() * mqk);
    }
    m.set(p, q, c64(0.0, 0.0));
    m.set(q, p, c64(0.0, 0.0));
    m.set(p, p, c64(m.get(p, p).re, 0.0));
    m.set(q, q, c64(m.get(q, q).re, 0.0));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::pauli;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let x = ComplexMatrix::from_fn(n, n, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        &x + &x.dagger()
    }

    #[test]
    fn pauli_z_and_mixed() {
        let e = eig_hermitian(&pauli(3).unwrap()).unwrap();
        assert_eq!(e.values, vec![-1.0, 1.0]);
        let e = eig_hermitian(&ComplexMatrix::identity(4).scale_re(0.25)).unwrap();
        assert!(e.values.iter().all(|&x| (x - 0.25).abs() < 1e-15));
    }

    #[test]
    fn singlet_projector_spectrum() {
        // ¼(1 - XX - YY - ZZ), built independently from Pauli matrices
        let mut rho = ComplexMatrix::identity(4);
        for k in 1..=3 {
            rho = &rho - &pauli(k).unwrap().kron(&pauli(k).unwrap());
        }
        let e = eig_hermitian(&rho.scale_re(0.25)).unwrap();
        let expected = [0.0, 0.0, 0.0, 1.0];
        for (x, y) in e.values.iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 4, 9, 16] {
            let h = random_hermitian(n, &mut rng);
            let e = eig_hermitian(&h).unwrap();
            assert!(e.reconstruct().max_abs_diff(&h) < 1e-9);
            assert!(e.vectors.unitarity_deviation() < 1e-12);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn degenerate_input() {
        let h = ComplexMatrix::diag(&[c64(2.0, 0.0), c64(2.0, 0.0), c64(-1.0, 0.0)]);
        let e = eig_hermitian(&h).unwrap();
        assert_eq!(e.values, vec![-1.0, 2.0, 2.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(eig_hermitian(&a), Err(Error::NotHermitian(_))));
        assert!(eig_hermitian(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}
