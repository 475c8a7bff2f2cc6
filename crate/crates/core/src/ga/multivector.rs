use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{Blade, Signature};

/// Sparse element of `G(p,q)`.
///
/// Terms are kept sorted by ascending blade mask with no zero coefficients,
/// so equal values have equal representations and serialize identically.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    sig: Signature,
    terms: Vec<(Blade, f64)>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            terms: Vec::new(),
        }
    }

    pub fn scalar(sig: Signature, x: f64) -> Self {
        Self::from_terms(sig, [(Blade::SCALAR, x)]).expect("scalar always fits")
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, 1.0)
    }

    /// Basis vector `k` (1-based).
    pub fn basis_vector(sig: Signature, k: usize) -> Result<Self> {
        if k == 0 || k > sig.dim() {
            return Err(Error::BladeOutOfRange {
                mask: if k == 0 { 0 } else { 1 << (k - 1) },
                dim: sig.dim(),
            });
        }
        Self::from_terms(sig, [(Blade::vector(k), 1.0)])
    }

    /// Vector with the given components along `e1, e2, ...`.
    pub fn vector(sig: Signature, components: &[f64]) -> Result<Self> {
        if components.len() > sig.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} components for a {}-dimensional space",
                components.len(),
                sig.dim()
            )));
        }
        Self::from_terms(
            sig,
            components
                .iter()
                .enumerate()
                .map(|(i, &c)| (Blade::vector(i + 1), c)),
        )
    }

    pub fn blade(sig: Signature, blade: Blade, coeff: f64) -> Result<Self> {
        Self::from_terms(sig, [(blade, coeff)])
    }

    /// Sums the given terms; repeated blades accumulate, zeros are dropped.
    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, f64)>) -> Result<Self> {
        let mut v: Vec<(Blade, f64)> = Vec::new();
        for (b, c) in terms {
            if !b.fits(sig) {
                return Err(Error::BladeOutOfRange {
                    mask: b.0,
                    dim: sig.dim(),
                });
            }
            v.push((b, c));
        }
        Ok(Self::from_unsorted(sig, v))
    }

    pub(crate) fn from_unsorted(sig: Signature, mut v: Vec<(Blade, f64)>) -> Self {
        v.sort_by_key(|t| t.0);
        let mut terms: Vec<(Blade, f64)> = Vec::with_capacity(v.len());
        for (b, c) in v {
            match terms.last_mut() {
                Some(last) if last.0 == b => last.1 += c,
                _ => terms.push((b, c)),
            }
        }
        terms.retain(|t| t.1 != 0.0);
        Self { sig, terms }
    }

    /// Assumes `terms` is already sorted with unique blades.
    pub(crate) fn from_sorted(sig: Signature, terms: Vec<(Blade, f64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        Self { sig, terms }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> &[(Blade, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, blade: Blade) -> f64 {
        self.terms
            .binary_search_by_key(&blade, |t| t.0)
            .map(|i| self.terms[i].1)
            .unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeff(Blade::SCALAR)
    }

    /// Drops terms with `|c| < threshold`.
    pub fn prune(mut self, threshold: f64) -> Self {
        self.terms.retain(|t| t.1.abs() >= threshold && t.1 != 0.0);
        self
    }

    pub fn map_coeffs(&self, f: impl Fn(Blade, f64) -> f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|&(b, c)| (b, f(b, c)))
            .filter(|t| t.1 != 0.0)
            .collect();
        Self::from_sorted(self.sig, terms)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_coeffs(|_, c| c * s)
    }

    /// `<a>_r`: keeps exactly the grade-`r` terms.
    pub fn grade_project(&self, r: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .copied()
            .filter(|t| t.0.grade() == r)
            .collect();
        Self::from_sorted(self.sig, terms)
    }

    /// Checked grade projection: `r` must not exceed `p+q`.
    pub fn try_grade_project(&self, r: usize) -> Result<Self> {
        if r > self.sig.dim() {
            return Err(Error::GradeOutOfRange {
                grade: r,
                dim: self.sig.dim(),
            });
        }
        Ok(self.grade_project(r))
    }

    /// Sorted list of grades with nonzero content.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.iter().map(|t| t.0.grade()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|t| t.0.grade() % 2 == 0)
    }

    pub fn is_homogeneous(&self, r: usize) -> bool {
        self.terms.iter().all(|t| t.0.grade() == r)
    }

    /// Largest odd-grade coefficient magnitude.
    pub fn odd_magnitude(&self) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.0.grade() % 2 == 1)
            .fold(0.0, |m, t| m.max(t.1.abs()))
    }

    /// Reversion: the grade-`r` part picks up `(-1)^(r(r-1)/2)`.
    pub fn reverse(&self) -> Self {
        self.map_coeffs(|b, c| c * b.reverse_sign())
    }

    /// Grade involution: the grade-`r` part picks up `(-1)^r`.
    pub fn grade_involute(&self) -> Self {
        self.map_coeffs(|b, c| c * b.involute_sign())
    }

    /// Sum of absolute coefficients.
    pub fn norm1(&self) -> f64 {
        self.terms.iter().map(|t| t.1.abs()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, t| m.max(t.1.abs()))
    }

    /// Largest coefficient difference against `other` (infinite if the
    /// signatures differ).
    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        if self.sig != other.sig {
            return f64::INFINITY;
        }
        (self - other).max_abs()
    }

    fn zip_with(&self, other: &Multivector, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.sig, other.sig, "signature mismatch in multivector arithmetic");
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let t = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, f(a[i - 1].1, 0.0))
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, f(0.0, b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, f(a[i - 1].1, b[j - 1].1))
            };
            if t.1 != 0.0 {
                out.push(t);
            }
        }
        Self::from_sorted(self.sig, out)
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Self> {
        self.sig.check_same(other.sig)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Self> {
        self.sig.check_same(other.sig)?;
        Ok(self - other)
    }

    pub fn to_json(&self) -> MultivectorJson {
        MultivectorJson {
            signature: [self.sig.p(), self.sig.q()],
            terms: self
                .terms
                .iter()
                .map(|&(b, c)| TermJson {
                    blade: b.indices(),
                    coeff: c,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &MultivectorJson) -> Result<Self> {
        let sig = Signature::new(j.signature[0], j.signature[1])?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if !t.coeff.is_finite() {
                return Err(Error::Parse(format!("non-finite coefficient {}", t.coeff)));
            }
            terms.push((Blade::from_indices(&t.blade)?, t.coeff));
        }
        Self::from_terms(sig, terms)
    }
}

/// Wire form: `{"signature":[p,q],"terms":[{"blade":[1,2],"coeff":0.5}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub signature: [usize; 2],
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub blade: Vec<usize>,
    pub coeff: f64,
}

impl Serialize for Multivector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MultivectorJson::deserialize(d)?;
        Multivector::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (b, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " {} ", if *c < 0.0 { '-' } else { '+' })?;
            } else if *c < 0.0 {
                write!(f, "-")?;
            }
            if b.0 == 0 {
                write!(f, "{}", c.abs())?;
            } else {
                write!(f, "{}*{}", c.abs(), b)?;
            }
        }
        Ok(())
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g3() -> Signature {
        Signature::g3()
    }

    #[test]
    fn grade_projection() {
        let e12 = Multivector::blade(g3(), Blade(0b11), 1.0).unwrap();
        let x = &e12 + &Multivector::scalar(g3(), 3.0);
        assert_eq!(x.grade_project(0), Multivector::scalar(g3(), 3.0));
        assert_eq!(x.grade_project(2), e12);
        assert!(x.grade_project(1).is_zero());
        assert!(x.try_grade_project(4).is_err());
        let sum = (0..=3).fold(Multivector::zero(g3()), |acc, r| &acc + &x.grade_project(r));
        assert_eq!(sum, x);
    }

    #[test]
    fn reverse_and_involute() {
        let e12 = Multivector::blade(g3(), Blade(0b11), 1.0).unwrap();
        assert_eq!(e12.reverse(), -&e12);
        assert_eq!(e12.grade_involute(), e12);
        let e1 = Multivector::basis_vector(g3(), 1).unwrap();
        assert_eq!(e1.grade_involute(), -&e1);
        let sv = &Multivector::scalar(g3(), 2.0) + &e1;
        assert_eq!(sv.reverse(), sv);
    }

    #[test]
    fn canonical_order_and_cancellation() {
        let x = Multivector::from_terms(
            g3(),
            [(Blade(0b110), 1.0), (Blade(0b1), 2.0), (Blade(0b110), -1.0)],
        )
        .unwrap();
        assert_eq!(x.terms(), &[(Blade(0b1), 2.0)]);
    }

    #[test]
    fn json_shape() {
        let x = Multivector::from_terms(g3(), [(Blade(0), 0.5), (Blade(0b101), -2.0)]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"signature":[3,0],"terms":[{"blade":[],"coeff":0.5},{"blade":[1,3],"coeff":-2.0}]}"#
        );
        let back: Multivector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn json_rejects_bad_blade() {
        let bad = r#"{"signature":[3,0],"terms":[{"blade":[4],"coeff":1.0}]}"#;
        assert!(serde_json::from_str::<Multivector>(bad).is_err());
        let unsorted = r#"{"signature":[3,0],"terms":[{"blade":[2,1],"coeff":1.0}]}"#;
        assert!(serde_json::from_str::<Multivector>(unsorted).is_err());
    }
}
