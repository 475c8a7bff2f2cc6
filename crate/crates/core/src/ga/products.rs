use std::collections::BTreeMap;
use std::ops::Mul;

use crate::error::Result;

use super::blade::blade_product_raw;
use super::{Blade, Multivector, Signature};

/// Terms with `|c|` below this are dropped after every product.
pub const PRODUCT_PRUNE: f64 = 1e-15;

// Dense accumulation is used up to this dimension (4096 slots).
const DENSE_LIMIT: usize = 12;

/// Bilinear blade-by-blade product, keeping only result blades accepted by
/// `keep(grade_a, grade_b, grade_out)`.
fn product_filtered(
    a: &Multivector,
    b: &Multivector,
    keep: impl Fn(usize, usize, usize) -> bool,
) -> Multivector {
    let sig = a.signature();
    assert_eq!(sig, b.signature(), "signature mismatch in product");
    let neg = sig.negative_mask();
    if sig.dim() <= DENSE_LIMIT {
        let mut acc = vec![0.0f64; sig.algebra_dim()];
        let mut touched = vec![false; sig.algebra_dim()];
        for &(ba, ca) in a.terms() {
            let ga = ba.grade();
            for &(bb, cb) in b.terms() {
                let (m, s) = blade_product_raw(ba.0, bb.0, neg);
                if keep(ga, bb.grade(), m.count_ones() as usize) {
                    acc[m as usize] += s * ca * cb;
                    touched[m as usize] = true;
                }
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|&(i, c)| touched[i] && c.abs() >= PRODUCT_PRUNE)
            .map(|(i, c)| (Blade(i as u32), c))
            .collect();
        Multivector::from_sorted(sig, terms)
    } else {
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for &(ba, ca) in a.terms() {
            let ga = ba.grade();
            for &(bb, cb) in b.terms() {
                let (m, s) = blade_product_raw(ba.0, bb.0, neg);
                if keep(ga, bb.grade(), m.count_ones() as usize) {
                    *acc.entry(m).or_insert(0.0) += s * ca * cb;
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|t| t.1.abs() >= PRODUCT_PRUNE)
            .map(|(m, c)| (Blade(m), c))
            .collect();
        Multivector::from_sorted(sig, terms)
    }
}

fn gp(a: &Multivector, b: &Multivector) -> Multivector {
    product_filtered(a, b, |_, _, _| true)
}

pub fn geometric_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.signature().check_same(b.signature())?;
    Ok(gp(a, b))
}

/// `A_r ∧ B_s = <A_r B_s>_{r+s}`, extended bilinearly over grade pairs.
pub fn outer_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.signature().check_same(b.signature())?;
    Ok(product_filtered(a, b, |r, s, out| out == r + s))
}

/// `A_r · B_s = <A_r B_s>_{|r-s|}`; products with a scalar operand vanish.
pub fn inner_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.signature().check_same(b.signature())?;
    Ok(product_filtered(a, b, |r, s, out| {
        r > 0 && s > 0 && out == r.abs_diff(s)
    }))
}

/// Lie bracket `½(ab - ba)`.
pub fn commutator_half(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.signature().check_same(b.signature())?;
    Ok((&gp(a, b) - &gp(b, a)).scale(0.5))
}

impl Multivector {
    pub fn gp(&self, other: &Multivector) -> Multivector {
        gp(self, other)
    }

    pub fn wedge(&self, other: &Multivector) -> Multivector {
        product_filtered(self, other, |r, s, out| out == r + s)
    }

    pub fn dot(&self, other: &Multivector) -> Multivector {
        product_filtered(self, other, |r, s, out| r > 0 && s > 0 && out == r.abs_diff(s))
    }

    pub fn bracket(&self, other: &Multivector) -> Multivector {
        (&gp(self, other) - &gp(other, self)).scale(0.5)
    }

    /// `self^n` by repeated squaring.
    pub fn powi(&self, n: u32) -> Multivector {
        let mut result = Multivector::one(self.signature());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = gp(&result, &base);
            }
            base = gp(&base, &base);
            n >>= 1;
        }
        result
    }

    /// Product of a list of multivectors, left to right.
    pub fn product_of<'a>(sig: Signature, factors: impl IntoIterator<Item = &'a Multivector>) -> Multivector {
        factors
            .into_iter()
            .fold(Multivector::one(sig), |acc, f| gp(&acc, f))
    }
}

/// Geometric product. Panics if the signatures differ; use
/// [`geometric_product`] for a checked version.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        gp(self, rhs)
    }
}

impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        gp(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> Signature {
        Signature::g3()
    }

    fn e(k: usize) -> Multivector {
        Multivector::basis_vector(g3(), k).unwrap()
    }

    #[test]
    fn g3_bivector_relations() {
        let big_e1 = &e(2) * &e(3);
        let big_e2 = &e(3) * &e(1);
        let big_e3 = &e(1) * &e(2);
        assert_eq!(&big_e1 * &big_e1, Multivector::scalar(g3(), -1.0));
        assert_eq!(&big_e1 * &big_e2, -&big_e3);
        assert_eq!(&big_e1 * &big_e2, -(&big_e2 * &big_e1));
        assert_eq!(
            Multivector::product_of(g3(), [&big_e1, &big_e2, &big_e3]),
            Multivector::one(g3())
        );
        let i = Multivector::product_of(g3(), [&e(1), &e(2), &e(3)]);
        assert_eq!(&i * &i, Multivector::scalar(g3(), -1.0));
    }

    #[test]
    fn outer_examples() {
        assert!(outer_product(&e(1), &e(1)).unwrap().is_zero());
        let e12 = outer_product(&e(1), &e(2)).unwrap();
        assert_eq!(e12.terms(), &[(Blade(0b11), 1.0)]);
        // (e1+e2)∧e2 against ½(ab - ba)
        let a = &e(1) + &e(2);
        let oracle = (&(&a * &e(2)) - &(&e(2) * &a)).scale(0.5);
        assert_eq!(outer_product(&a, &e(2)).unwrap(), oracle);
        assert_eq!(oracle, e12);
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner_product(&e(1), &e(1)).unwrap(), Multivector::one(g3()));
        let e12 = &e(1) * &e(2);
        // ½(aB + Ba) for r = 2 (the (-1)^r B a term with r even)
        let oracle = (&(&e(1) * &e12) - &(&e12 * &e(1))).scale(0.5);
        assert_eq!(inner_product(&e(1), &e12).unwrap(), e(2));
        assert_eq!(oracle, e(2));
        let five = Multivector::scalar(g3(), 5.0);
        assert!(inner_product(&five, &e(1)).unwrap().is_zero());
    }

    #[test]
    fn projection_of_product() {
        let e12 = &e(1) * &e(2);
        assert!((&e(1) * &e12).grade_project(3).is_zero());
    }

    #[test]
    fn signature_mismatch_is_error() {
        let a = Multivector::one(g3());
        let b = Multivector::one(Signature::g6());
        assert!(geometric_product(&a, &b).is_err());
        assert!(outer_product(&a, &b).is_err());
        assert!(inner_product(&a, &b).is_err());
        assert!(commutator_half(&a, &b).is_err());
    }

    #[test]
    fn sparse_path_agrees_with_dense() {
        // G(13,0) exercises the map-based accumulator.
        let big = Signature::new(13, 0).unwrap();
        let a = Multivector::from_terms(
            big,
            [(Blade(0b1_0000_0000_0011), 1.5), (Blade(0b1_0000_0000_0001), -2.0)],
        )
        .unwrap();
        let b = Multivector::from_terms(big, [(Blade(0b1_0000_0000_0001), 0.5), (Blade(0b10), 1.0)])
            .unwrap();
        let c = &a * &b;
        let small = Signature::new(3, 0).unwrap();
        let a3 = Multivector::from_terms(small, [(Blade(0b111), 1.5), (Blade(0b101), -2.0)]).unwrap();
        let b3 = Multivector::from_terms(small, [(Blade(0b101), 0.5), (Blade(0b10), 1.0)]).unwrap();
        let c3 = &a3 * &b3;
        // map bit 2 of the small algebra onto bit 12 of the big one
        let lift = |m: u32| (m & 0b11) | ((m >> 2 & 1) << 12);
        let lifted = Multivector::from_terms(big, c3.terms().iter().map(|&(b, x)| (Blade(lift(b.0)), x)))
            .unwrap();
        assert_eq!(c, lifted);
    }
}
