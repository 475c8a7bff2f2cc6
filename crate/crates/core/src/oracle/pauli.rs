use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{c64, ComplexMatrix};

/// Pauli label `0..=3`; `0` is the 2×2 identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliLabel(u8);

impl PauliLabel {
    pub fn new(k: usize) -> Result<Self> {
        if k > 3 {
            Err(Error::PauliLabel(k))
        } else {
            Ok(Self(k as u8))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// `σ_k`, with `σ_0 = I`.
pub fn pauli(k: usize) -> Result<ComplexMatrix> {
    let label = PauliLabel::new(k)?;
    let (o, z, i) = (c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 1.0));
    let data = match label.index() {
        0 => vec![o, z, z, o],
        1 => vec![z, o, o, z],
        2 => vec![z, -i, i, z],
        _ => vec![o, z, z, -o],
    };
    ComplexMatrix::new(2, 2, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: usize) -> ComplexMatrix {
        pauli(k).unwrap()
    }

    #[test]
    fn explicit_entries() {
        assert_eq!(s(1), ComplexMatrix::from_real(2, 2, &[0., 1., 1., 0.]).unwrap());
        assert_eq!(s(3), ComplexMatrix::from_real(2, 2, &[1., 0., 0., -1.]).unwrap());
        assert_eq!(s(0), ComplexMatrix::identity(2));
        assert!(matches!(pauli(4), Err(Error::PauliLabel(4))));
    }

    #[test]
    fn algebra() {
        let i = c64(0.0, 1.0);
        for k in 1..=3 {
            assert_eq!(&s(k) * &s(k), ComplexMatrix::identity(2));
            let (a, b) = (k % 3 + 1, (k + 1) % 3 + 1);
            assert_eq!(&s(k) * &s(a), s(b).scale(i));
            assert_eq!(&(&s(k) * &s(a)) + &(&s(a) * &s(k)), ComplexMatrix::zeros(2, 2));
        }
    }

    #[test]
    fn kron_facts() {
        let z0 = s(3).kron(&s(0));
        let diag: Vec<f64> = (0..4).map(|i| z0.get(i, i).re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
        assert_eq!(s(1).kron(&s(1)).trace().unwrap(), c64(0.0, 0.0));
        let (a, b) = (s(2).scale(c64(0.3, 0.7)), s(1).scale(c64(-1.1, 0.2)));
        assert_eq!(a.kron(&b).dagger(), a.dagger().kron(&b.dagger()));
    }

    #[test]
    fn bracket_of_local_generators() {
        let i = c64(0.0, 1.0);
        let g1 = s(1).kron(&s(0)).scale(i);
        let g2 = s(2).kron(&s(0)).scale(i);
        let expected = s(3).kron(&s(0)).scale(-i);
        assert!(g1.commutator_half(&g2).unwrap().max_abs_diff(&expected) < 1e-15);
    }
}
