use std::fmt;

use crate::error::{Error, Result};

use super::Signature;

/// Basis blade identified by its bitmask over basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Builds a blade from 1-based vector indices, which must be strictly
    /// ascending.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        let mut last = 0usize;
        for &k in indices {
            if k == 0 || k > Signature::MAX_DIM || k <= last {
                return Err(Error::Parse(format!(
                    "blade indices must be ascending and in 1..=16, got {indices:?}"
                )));
            }
            mask |= 1 << (k - 1);
            last = k;
        }
        Ok(Blade(mask))
    }

    /// Basis vector `k` (1-based).
    pub fn vector(k: usize) -> Self {
        debug_assert!(k >= 1);
        Blade(1 << (k - 1))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based ascending vector indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn fits(self, sig: Signature) -> bool {
        self.0 & !sig.full_mask() == 0
    }

    /// Sign picked up by reversion, `(-1)^(r(r-1)/2)`.
    pub fn reverse_sign(self) -> f64 {
        let r = self.grade();
        if (r * r.saturating_sub(1) / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Sign picked up by the grade involution, `(-1)^r`.
    pub fn involute_sign(self) -> f64 {
        if self.grade().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|k| format!("e{k}")).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// Number of transpositions needed to merge the vector lists of `a` and `b`
/// into ascending order, modulo 2.
#[inline]
pub(crate) fn reorder_parity(a: u32, b: u32) -> u32 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    swaps & 1
}

/// Product of two basis blades without validation. The sign is `+1` or `-1`.
#[inline]
pub(crate) fn blade_product_raw(a: u32, b: u32, negative_mask: u32) -> (u32, f64) {
    let flips = reorder_parity(a, b) + (a & b & negative_mask).count_ones();
    (a ^ b, if flips & 1 == 0 { 1.0 } else { -1.0 })
}

/// Geometric product of two basis blades: the canonical result blade and its
/// sign. Nondegenerate signatures never produce a zero sign.
pub fn blade_product(a: Blade, b: Blade, sig: Signature) -> Result<(Blade, i8)> {
    for x in [a, b] {
        if !x.fits(sig) {
            return Err(Error::BladeOutOfRange {
                mask: x.0,
                dim: sig.dim(),
            });
        }
    }
    let (m, s) = blade_product_raw(a.0, b.0, sig.negative_mask());
    Ok((Blade(m), s as i8))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(ix: &[usize]) -> Blade {
        Blade::from_indices(ix).unwrap()
    }

    #[test]
    fn vector_squares() {
        let g3 = Signature::g3();
        assert_eq!(blade_product(b(&[1]), b(&[1]), g3).unwrap(), (Blade::SCALAR, 1));
        let sta = Signature::new(1, 3).unwrap();
        assert_eq!(blade_product(b(&[2]), b(&[2]), sta).unwrap(), (Blade::SCALAR, -1));
    }

    #[test]
    fn bivector_relations_in_g3() {
        let g3 = Signature::g3();
        // (e2e3)(e2e3) = -1
        assert_eq!(blade_product(b(&[2, 3]), b(&[2, 3]), g3).unwrap(), (Blade::SCALAR, -1));
        // (e2e3)(e3e1) = e2e1 = -e1e2; e3e1 is stored as -e1e3
        let (m, s) = blade_product(b(&[2, 3]), b(&[1, 3]), g3).unwrap();
        assert_eq!(m, b(&[1, 2]));
        assert_eq!(-s, -1);
    }

    #[test]
    fn brute_force_sign_matches() {
        // Oracle: concatenate index lists and bubble-sort, cancelling pairs.
        fn brute(a: &[usize], c: &[usize], p: usize) -> (Vec<usize>, i32) {
            let mut v: Vec<usize> = a.iter().chain(c).copied().collect();
            let mut sign = 1;
            let mut changed = true;
            while changed {
                changed = false;
                let mut i = 0;
                while i + 1 < v.len() {
                    if v[i] > v[i + 1] {
                        v.swap(i, i + 1);
                        sign = -sign;
                        changed = true;
                    } else if v[i] == v[i + 1] {
                        if v[i] > p {
                            sign = -sign;
                        }
                        v.drain(i..i + 2);
                        changed = true;
                        continue;
                    }
                    i += 1;
                }
            }
            (v, sign)
        }
        let sig = Signature::new(3, 2).unwrap();
        for ma in 0u32..32 {
            for mb in 0u32..32 {
                let (m, s) = blade_product(Blade(ma), Blade(mb), sig).unwrap();
                let (v, bs) = brute(&Blade(ma).indices(), &Blade(mb).indices(), 3);
                assert_eq!(m, Blade::from_indices(&v).unwrap());
                assert_eq!(s as i32, bs, "{ma:b} * {mb:b}");
            }
        }
    }

    #[test]
    fn out_of_range() {
        assert!(blade_product(b(&[4]), b(&[1]), Signature::g3()).is_err());
        assert!(Blade::from_indices(&[2, 1]).is_err());
    }

    #[test]
    fn involution_signs() {
        let signs: Vec<f64> = (1..=8).map(|r| Blade((1 << r) - 1).reverse_sign()).collect();
        assert_eq!(signs, vec![1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0]);
        assert_eq!(Blade(0b11).involute_sign(), 1.0);
        assert_eq!(Blade(0b111).involute_sign(), -1.0);
    }
}
