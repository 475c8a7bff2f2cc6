use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Metric signature `(p, q)` of a nondegenerate real quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    pub const MAX_DIM: usize = 16;

    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q > Self::MAX_DIM {
            return Err(Error::SignatureTooLarge { p, q });
        }
        Ok(Self {
            p: p as u8,
            q: q as u8,
        })
    }

    /// Euclidean `G(n,0)`.
    pub fn euclidean(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    /// `G(3,0)`, the algebra of physical space.
    pub fn g3() -> Self {
        Self { p: 3, q: 0 }
    }

    /// `G(6,0)`; vectors 1-3 are `e1..e3`, 4-6 are `f1..f3`.
    pub fn g6() -> Self {
        Self { p: 6, q: 0 }
    }

    pub fn p(self) -> usize {
        self.p as usize
    }

    pub fn q(self) -> usize {
        self.q as usize
    }

    pub fn dim(self) -> usize {
        self.p() + self.q()
    }

    /// Dimension of the full algebra, `2^(p+q)`.
    pub fn algebra_dim(self) -> usize {
        1usize << self.dim()
    }

    /// Mask of the basis vectors that square to `-1`.
    pub fn negative_mask(self) -> u32 {
        (((1u32 << self.q) - 1) << self.p) & self.full_mask()
    }

    /// Mask with every basis vector present (the pseudoscalar blade).
    pub fn full_mask(self) -> u32 {
        if self.dim() == 32 {
            u32::MAX
        } else {
            (1u32 << self.dim()) - 1
        }
    }

    /// Square of basis vector `k` (1-based).
    pub fn square(self, k: usize) -> f64 {
        if k <= self.p() {
            1.0
        } else {
            -1.0
        }
    }

    pub(crate) fn check_same(self, other: Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(self.p(), self.q(), other.p(), other.q()))
        }
    }
}

impl TryFrom<[usize; 2]> for Signature {
    type Error = Error;

    fn try_from(v: [usize; 2]) -> Result<Self> {
        Signature::new(v[0], v[1])
    }
}

impl From<Signature> for [usize; 2] {
    fn from(s: Signature) -> Self {
        [s.p(), s.q()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks() {
        let s = Signature::new(2, 3).unwrap();
        assert_eq!(s.full_mask(), 0b11111);
        assert_eq!(s.negative_mask(), 0b11100);
        assert_eq!(s.square(2), 1.0);
        assert_eq!(s.square(3), -1.0);
        assert_eq!(s.algebra_dim(), 32);
    }

    #[test]
    fn rejects_oversized() {
        assert!(Signature::new(10, 7).is_err());
        assert!(Signature::new(16, 0).is_ok());
    }
}
