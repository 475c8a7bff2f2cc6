use rand::Rng;
use rand_distr::StandardNormal;

use super::{c64, ComplexMatrix, C64};

/// Haar-distributed `U(n)`: modified Gram-Schmidt on a complex Gaussian
/// matrix, which is QR with a positive diagonal in `R`.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let mut cols: Vec<Vec<C64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| c64(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                    .collect()
            })
            .collect();
        let mut ok = true;
        for k in 0..n {
            for p in 0..k {
                let (done, rest) = cols.split_at_mut(k);
                let proj: C64 = done[p].iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
                for (x, q) in rest[0].iter_mut().zip(&done[p]) {
                    *x -= proj * q;
                }
            }
            let norm = cols[k].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols[k].iter_mut().for_each(|x| *x /= norm);
        }
        if ok {
            return ComplexMatrix::from_fn(n, n, |i, j| cols[j][i]);
        }
    }
}

/// Haar `U(n)` rescaled to unit determinant.
pub fn random_special_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let u = random_unitary(n, rng);
    let d = u.det().expect("square");
    let a = -d.arg() / n as f64;
    u.scale(c64(a.cos(), a.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_and_special() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            let u = random_unitary(n, &mut rng);
            assert!(u.unitarity_deviation() < 1e-13);
            let s = random_special_unitary(n, &mut rng);
            assert!(s.unitarity_deviation() < 1e-13);
            assert!((s.det().unwrap() - c64(1.0, 0.0)).norm() < 1e-13);
        }
    }
}
