use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ga::{pseudoscalar, Blade, Multivector, Signature};
use crate::oracle::ComplexMatrix;

use super::{adoption, generator_bivector, generator_matrix, GeneratorConvention, GeneratorIndex};

/// Linear bijection between `G⁺(6,0)` and 4×4 complex matrices for one
/// generator convention.
///
/// Each even blade `e_{a1} e_{a2} … e_{a2n}` (ascending) is the product of
/// the consecutive pairs `(e_{a1} e_{a2})(e_{a3} e_{a4})…`, each of which is
/// `±G_ij`; its image is the product of the matching `±i σ_i ⊗ σ_j`. This
/// makes the map multiplicative, and sends `I` to `-i·I₄`.
#[derive(Debug, Clone)]
pub struct TwoQubitAlgebra {
    convention: GeneratorConvention,
    /// Indexed by blade mask; odd masks hold nothing.
    images: Vec<Option<ComplexMatrix>>,
}

impl TwoQubitAlgebra {
    pub fn new(convention: GeneratorConvention) -> Self {
        let mut pair = vec![None; 64];
        for g in GeneratorIndex::all() {
            let sign = generator_bivector(g, convention).coeff(g.blade());
            pair[g.blade().0 as usize] = Some(generator_matrix(g).scale_re(sign));
        }
        let images = (0u32..64)
            .map(|mask| {
                if mask.count_ones() % 2 == 1 {
                    return None;
                }
                let bits: Vec<u32> = (0..6).filter(|k| mask >> k & 1 == 1).collect();
                let mut m = ComplexMatrix::identity(4);
                for p in bits.chunks(2) {
                    let pm = (1u32 << p[0]) | (1u32 << p[1]);
                    m = &m * pair[pm as usize].as_ref().expect("grade-2 mask");
                }
                Some(m)
            })
            .collect();
        Self { convention, images }
    }

    /// The algebra for the convention chosen by [`adoption`].
    pub fn adopted() -> &'static Self {
        static CELL: OnceLock<TwoQubitAlgebra> = OnceLock::new();
        CELL.get_or_init(|| TwoQubitAlgebra::new(adoption().adopted))
    }

    pub fn convention(&self) -> GeneratorConvention {
        self.convention
    }

    pub fn generator(&self, g: GeneratorIndex) -> Multivector {
        generator_bivector(g, self.convention)
    }

    /// Image of a single even blade.
    pub fn blade_image(&self, b: Blade) -> Option<&ComplexMatrix> {
        self.images.get(b.0 as usize).and_then(|m| m.as_ref())
    }

    pub fn even_to_matrix(&self, x: &Multivector) -> Result<ComplexMatrix> {
        Signature::g6().check_same(x.signature())?;
        let odd = x.odd_magnitude();
        if odd > 0.0 {
            return Err(Error::OddGrade(odd));
        }
        let mut out = ComplexMatrix::zeros(4, 4);
        for &(b, c) in x.terms() {
            let m = self.blade_image(b).expect("even blade");
            out = &out + &m.scale_re(c);
        }
        Ok(out)
    }

    /// Inverse of [`even_to_matrix`](Self::even_to_matrix). The 32 blade
    /// images are orthonormal under `Re tr(a† b) / 4`.
    pub fn matrix_to_even(&self, m: &ComplexMatrix) -> Result<Multivector> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "expected 4x4, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let terms = self.images.iter().enumerate().filter_map(|(mask, img)| {
            let img = img.as_ref()?;
            let c = (&img.dagger() * m).trace().expect("square").re / 4.0;
            (c != 0.0).then_some((Blade(mask as u32), c))
        });
        Ok(Multivector::from_terms(Signature::g6(), terms)?.prune(1e-15))
    }
}

/// [`TwoQubitAlgebra::even_to_matrix`] under the adopted convention.
pub fn even_to_matrix(x: &Multivector) -> Result<ComplexMatrix> {
    TwoQubitAlgebra::adopted().even_to_matrix(x)
}

/// [`TwoQubitAlgebra::matrix_to_even`] under the adopted convention.
pub fn matrix_to_even(m: &ComplexMatrix) -> Result<Multivector> {
    TwoQubitAlgebra::adopted().matrix_to_even(m)
}

/// `P₃¹P₃² = ½(1 - I e1e2) · ½(1 - I f1f2)`, the reference-state idempotent.
pub fn p3p3() -> Multivector {
    let sig = Signature::g6();
    let i = pseudoscalar(sig);
    let one = Multivector::one(sig);
    let e12 = Multivector::blade(sig, Blade(0b000011), 1.0).expect("fits");
    let f12 = Multivector::blade(sig, Blade(0b011000), 1.0).expect("fits");
    let p1 = (&one - &i.gp(&e12)).scale(0.5);
    let p2 = (&one - &i.gp(&f12)).scale(0.5);
    p1.gp(&p2)
}

/// Computational-basis index of the reference state: the diagonal entry of
/// the image of [`p3p3`] equal to one.
pub fn reference_index() -> usize {
    static CELL: OnceLock<usize> = OnceLock::new();
    *CELL.get_or_init(|| {
        let m = even_to_matrix(&p3p3()).expect("even");
        (0..4)
            .max_by(|&a, &b| m.get(a, a).re.total_cmp(&m.get(b, b).re))
            .expect("nonempty")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::random;
    use crate::oracle::{c64, pauli};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn imaginary_unit() -> ComplexMatrix {
        ComplexMatrix::identity(4).scale(c64(0.0, 1.0))
    }

    fn g(i: usize, j: usize) -> Multivector {
        TwoQubitAlgebra::adopted().generator(GeneratorIndex::new(i, j).unwrap())
    }

    #[test]
    fn units() {
        let sig = Signature::g6();
        assert_eq!(even_to_matrix(&Multivector::one(sig)).unwrap(), ComplexMatrix::identity(4));
        let i = even_to_matrix(&pseudoscalar(sig)).unwrap();
        assert!(i.max_abs_diff(&imaginary_unit().scale_re(-1.0)) < 1e-15);
        for x in GeneratorIndex::all() {
            let m = even_to_matrix(&g(x.i(), x.j())).unwrap();
            assert!(m.max_abs_diff(&generator_matrix(x)) < 1e-15);
        }
    }

    #[test]
    fn reference_projector() {
        let p = p3p3();
        assert_eq!(p.gp(&p), p);
        let sig = Signature::g6();
        let i = pseudoscalar(sig);
        let one = Multivector::one(sig);
        let form = (&(&(&one - &i.gp(&g(3, 0))) - &i.gp(&g(0, 3))) + &i.gp(&g(3, 3))).scale(0.25);
        assert!(p.max_abs_diff(&form) < 1e-15);
        let m = even_to_matrix(&p).unwrap();
        let expected = ComplexMatrix::diag(&[c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)]);
        assert!(m.max_abs_diff(&expected) < 1e-15);
        assert_eq!(reference_index(), 3);
    }

    #[test]
    fn singlet_density_maps_to_singlet_projector() {
        let sig = Signature::g6();
        let i = pseudoscalar(sig);
        let mut rho = Multivector::one(sig);
        for k in 1..=3 {
            rho = &rho - &i.gp(&g(k, k));
        }
        let m = even_to_matrix(&rho.scale(0.25)).unwrap();
        let mut expected = ComplexMatrix::identity(4);
        for k in 1..=3 {
            expected = &expected - &pauli(k).unwrap().kron(&pauli(k).unwrap());
        }
        assert!(m.max_abs_diff(&expected.scale_re(0.25)) < 1e-15);
    }

    #[test]
    fn homomorphism_and_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sig = Signature::g6();
        for _ in 0..50 {
            let x = random::even(sig, &mut rng);
            let y = random::even(sig, &mut rng);
            let mx = even_to_matrix(&x).unwrap();
            let my = even_to_matrix(&y).unwrap();
            assert!(even_to_matrix(&x.gp(&y)).unwrap().max_abs_diff(&(&mx * &my)) < 1e-10);
            assert!(even_to_matrix(&x.reverse()).unwrap().max_abs_diff(&mx.dagger()) < 1e-10);
            assert!(matrix_to_even(&mx).unwrap().max_abs_diff(&x) < 1e-12);
        }
    }

    #[test]
    fn blade_images_are_orthonormal() {
        let alg = TwoQubitAlgebra::adopted();
        let masks: Vec<u32> = (0..64).filter(|m: &u32| m.count_ones().is_multiple_of(2)).collect();
        assert_eq!(masks.len(), 32);
        for &a in &masks {
            for &b in &masks {
                let ia = alg.blade_image(Blade(a)).unwrap();
                let ib = alg.blade_image(Blade(b)).unwrap();
                let ip = (&ia.dagger() * ib).trace().unwrap().re / 4.0;
                assert!((ip - if a == b { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn errors() {
        let sig = Signature::g6();
        let v = Multivector::basis_vector(sig, 1).unwrap();
        assert!(matches!(even_to_matrix(&v), Err(Error::OddGrade(_))));
        let g3 = Multivector::one(Signature::g3());
        assert!(matches!(even_to_matrix(&g3), Err(Error::SignatureMismatch(..))));
        assert!(matrix_to_even(&ComplexMatrix::identity(2)).is_err());
    }
}
