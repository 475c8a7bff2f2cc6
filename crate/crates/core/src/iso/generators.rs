use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::{Blade, Multivector, Signature};
use crate::oracle::{c64, pauli, ComplexMatrix};

/// Index pair `(i, j)` naming `G_ij` and `i σ_i ⊗ σ_j`; `(0, 0)` is invalid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct GeneratorIndex {
    i: u8,
    j: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `G_i0`, acting on the first qubit.
    LocalFirst,
    /// `G_0j`, acting on the second qubit.
    LocalSecond,
    Nonlocal,
}

impl GeneratorIndex {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i > 3 || j > 3 || (i == 0 && j == 0) {
            return Err(Error::GeneratorIndex(i, j));
        }
        Ok(Self {
            i: i as u8,
            j: j as u8,
        })
    }

    /// All fifteen indices, lexicographic in `(i, j)`.
    pub fn all() -> [GeneratorIndex; 15] {
        let mut out = [GeneratorIndex { i: 0, j: 1 }; 15];
        let mut n = 0;
        for i in 0..4u8 {
            for j in 0..4u8 {
                if i != 0 || j != 0 {
                    out[n] = GeneratorIndex { i, j };
                    n += 1;
                }
            }
        }
        out
    }

    pub fn i(self) -> usize {
        self.i as usize
    }

    pub fn j(self) -> usize {
        self.j as usize
    }

    /// Position in [`all`](Self::all).
    pub fn position(self) -> usize {
        4 * self.i() + self.j() - 1
    }

    pub fn kind(self) -> GeneratorKind {
        match (self.i, self.j) {
            (_, 0) => GeneratorKind::LocalFirst,
            (0, _) => GeneratorKind::LocalSecond,
            _ => GeneratorKind::Nonlocal,
        }
    }

    /// The two basis vectors (`1..=6`) spanned by the bivector, ascending.
    pub fn vertices(self) -> (usize, usize) {
        let (i, j) = (self.i(), self.j());
        match self.kind() {
            GeneratorKind::LocalFirst => (i % 3 + 1, (i + 1) % 3 + 1),
            GeneratorKind::LocalSecond => (j % 3 + 4, (j + 1) % 3 + 4),
            GeneratorKind::Nonlocal => (i, j + 3),
        }
        .into_sorted()
    }

    pub fn blade(self) -> Blade {
        let (a, b) = self.vertices();
        Blade((1 << (a - 1)) | (1 << (b - 1)))
    }

    /// Inverse of [`blade`](Self::blade) for grade-2 blades of `G(6)`.
    pub fn from_blade(b: Blade) -> Option<Self> {
        Self::all().into_iter().find(|g| g.blade() == b)
    }
}

trait Sorted {
    fn into_sorted(self) -> Self;
}

impl Sorted for (usize, usize) {
    fn into_sorted(self) -> Self {
        if self.0 <= self.1 {
            self
        } else {
            (self.1, self.0)
        }
    }
}

impl TryFrom<[usize; 2]> for GeneratorIndex {
    type Error = Error;
    fn try_from(v: [usize; 2]) -> Result<Self> {
        Self::new(v[0], v[1])
    }
}

impl From<GeneratorIndex> for [usize; 2] {
    fn from(g: GeneratorIndex) -> Self {
        [g.i(), g.j()]
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}{}", self.i, self.j)
    }
}

/// Sign convention for the nonlocal diagonal generators `G_kk`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GeneratorConvention {
    /// When set, `G_ij = e_i f_j (-1)^{δ_ij}`; otherwise `G_ij = e_i f_j`.
    pub delta_sign: bool,
}

impl GeneratorConvention {
    pub const WITH_DELTA: Self = Self { delta_sign: true };
    pub const WITHOUT_DELTA: Self = Self { delta_sign: false };

    /// Sign of `G_g` relative to its ascending blade.
    pub fn sign(self, g: GeneratorIndex) -> f64 {
        let (i, j) = (g.i(), g.j());
        match g.kind() {
            // G_10 = e2e3, G_20 = e3e1 = -e1e3, G_30 = e1e2
            GeneratorKind::LocalFirst => {
                if i == 2 {
                    -1.0
                } else {
                    1.0
                }
            }
            GeneratorKind::LocalSecond => {
                if j == 2 {
                    -1.0
                } else {
                    1.0
                }
            }
            GeneratorKind::Nonlocal => {
                if self.delta_sign && i == j {
                    -1.0
                } else {
                    1.0
                }
            }
        }
    }
}

impl fmt::Display for GeneratorConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.delta_sign {
            write!(f, "G_ij = e_i f_j (-1)^delta_ij")
        } else {
            write!(f, "G_ij = e_i f_j")
        }
    }
}

/// `G_g` as a unit bivector of `G(6,0)`.
pub fn generator_bivector(g: GeneratorIndex, conv: GeneratorConvention) -> Multivector {
    Multivector::blade(Signature::g6(), g.blade(), conv.sign(g)).expect("generator blades fit G(6)")
}

/// `i σ_i ⊗ σ_j`.
pub fn generator_matrix(g: GeneratorIndex) -> ComplexMatrix {
    let a = pauli(g.i()).expect("label in range");
    let b = pauli(g.j()).expect("label in range");
    a.kron(&b).scale(c64(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize, j: usize) -> GeneratorIndex {
        GeneratorIndex::new(i, j).unwrap()
    }

    fn e(k: usize) -> Multivector {
        Multivector::basis_vector(Signature::g6(), k).unwrap()
    }

    #[test]
    fn index_validation() {
        assert!(GeneratorIndex::new(0, 0).is_err());
        assert!(GeneratorIndex::new(4, 1).is_err());
        let all = GeneratorIndex::all();
        assert_eq!(all.len(), 15);
        for (n, x) in all.iter().enumerate() {
            assert_eq!(x.position(), n);
        }
        let s = serde_json::to_string(&g(2, 1)).unwrap();
        assert_eq!(s, "[2,1]");
        assert!(serde_json::from_str::<GeneratorIndex>("[0,0]").is_err());
    }

    #[test]
    fn definitions() {
        let c = GeneratorConvention::WITHOUT_DELTA;
        assert_eq!(generator_bivector(g(1, 0), c), e(2).gp(&e(3)));
        assert_eq!(generator_bivector(g(2, 0), c), e(3).gp(&e(1)));
        assert_eq!(generator_bivector(g(3, 0), c), e(1).gp(&e(2)));
        assert_eq!(generator_bivector(g(0, 1), c), e(5).gp(&e(6)));
        assert_eq!(generator_bivector(g(0, 2), c), e(6).gp(&e(4)));
        assert_eq!(generator_bivector(g(0, 3), c), e(4).gp(&e(5)));
        assert_eq!(generator_bivector(g(1, 2), c), e(1).gp(&e(5)));
        assert_eq!(generator_bivector(g(3, 3), c), e(3).gp(&e(6)));
        let d = GeneratorConvention::WITH_DELTA;
        assert_eq!(generator_bivector(g(3, 3), d), -e(3).gp(&e(6)));
        assert_eq!(generator_bivector(g(1, 2), d), e(1).gp(&e(5)));
    }

    #[test]
    fn vertices_form_k6() {
        let mut seen = std::collections::BTreeSet::new();
        for x in GeneratorIndex::all() {
            let (a, b) = x.vertices();
            assert!(a < b && b <= 6);
            assert!(seen.insert((a, b)));
            assert_eq!(GeneratorIndex::from_blade(x.blade()), Some(x));
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn matrices() {
        let i = c64(0.0, 1.0);
        let m = generator_matrix(g(3, 3));
        let expected = ComplexMatrix::diag(&[i, -i, -i, i]);
        assert_eq!(m, expected);
        let m = generator_matrix(g(1, 0));
        assert_eq!(m.get(0, 2), i);
        assert_eq!(m.get(0, 1), c64(0.0, 0.0));
        let m = generator_matrix(g(0, 2));
        assert_eq!(m.get(0, 1), c64(1.0, 0.0));
        for x in GeneratorIndex::all() {
            let m = generator_matrix(x);
            assert!(m.unitarity_deviation() < 1e-15);
            assert_eq!(m.dagger(), m.scale_re(-1.0));
        }
    }
}
