use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::{exp_series, pseudoscalar, Multivector, Signature, EXP_TOL};
use crate::iso::{even_to_matrix, generator_matrix, GeneratorIndex, TwoQubitAlgebra};
use crate::oracle::{c64, expm, ComplexMatrix, EXPM_TOL};

/// One term `coeff · G_ij`, or `coeff · I G_ij` when `pseudo` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorTerm {
    pub i: usize,
    pub j: usize,
    pub coeff: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub pseudo: bool,
}

impl FactorTerm {
    pub fn new(g: GeneratorIndex, coeff: f64) -> Self {
        Self {
            i: g.i(),
            j: g.j(),
            coeff,
            pseudo: false,
        }
    }

    pub fn generator(&self) -> Result<GeneratorIndex> {
        GeneratorIndex::new(self.i, self.j)
    }
}

/// `exp(Σ terms)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Factor {
    pub terms: Vec<FactorTerm>,
}

impl Factor {
    pub fn new(terms: Vec<FactorTerm>) -> Self {
        Self { terms }
    }

    /// Convenience: `[((i, j), coeff), …]`.
    pub fn of(terms: &[((usize, usize), f64)]) -> Result<Self> {
        terms
            .iter()
            .map(|&((i, j), c)| Ok(FactorTerm::new(GeneratorIndex::new(i, j)?, c)))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// The exponent as an even multivector.
    pub fn exponent(&self) -> Result<Multivector> {
        let alg = TwoQubitAlgebra::adopted();
        let i = pseudoscalar(Signature::g6());
        let mut b = Multivector::zero(Signature::g6());
        for t in &self.terms {
            let g = alg.generator(t.generator()?).scale(t.coeff);
            b = &b + &if t.pseudo { i.gp(&g) } else { g };
        }
        Ok(b)
    }

    /// The exponent built directly from `i σ_i ⊗ σ_j`; pseudoscalar terms use
    /// the image of `I`.
    pub fn matrix_exponent(&self) -> Result<ComplexMatrix> {
        let unit = even_to_matrix(&pseudoscalar(Signature::g6()))?;
        let mut b = ComplexMatrix::zeros(4, 4);
        for t in &self.terms {
            let g = generator_matrix(t.generator()?).scale_re(t.coeff);
            b = &b + &if t.pseudo { &unit * &g } else { g };
        }
        Ok(b)
    }
}

/// Ordered product `exp(F1) exp(F2) … exp(Fn)` times `e^{i·phase}`: the last
/// factor acts first.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Factorization {
    pub factors: Vec<Factor>,
    #[serde(default)]
    pub phase: f64,
}

impl Factorization {
    pub fn new(factors: Vec<Factor>) -> Self {
        Self { factors, phase: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.phase.is_finite() {
            return Err(Error::Parse("non-finite phase".into()));
        }
        for t in self.factors.iter().flat_map(|f| &f.terms) {
            t.generator()?;
            if !t.coeff.is_finite() {
                return Err(Error::Parse(format!("non-finite coefficient {}", t.coeff)));
            }
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let f: Self = serde_json::from_str(s)?;
        f.validate()?;
        Ok(f)
    }
}

/// Both images of a composed factorization.
#[derive(Debug, Clone, Serialize)]
pub struct Composed {
    pub rotor: Multivector,
    pub matrix: ComplexMatrix,
    /// `max |even_to_matrix(rotor) - matrix|`.
    pub agreement: f64,
}

/// Multiplies the factors in list order, once with multivector exponentials
/// and once with matrix exponentials. The phase enters the rotor as
/// `exp(-I·phase)`, since `I` maps to `-i`.
pub fn compose_factorization(f: &Factorization) -> Result<Composed> {
    f.validate()?;
    let sig = Signature::g6();
    let mut rotor = exp_series(&pseudoscalar(sig).scale(-f.phase), EXP_TOL)?;
    let mut matrix = ComplexMatrix::identity(4).scale(c64(f.phase.cos(), f.phase.sin()));
    for factor in &f.factors {
        rotor = rotor.gp(&exp_series(&factor.exponent()?, EXP_TOL)?);
        matrix = &matrix * &expm(&factor.matrix_exponent()?, EXPM_TOL)?;
    }
    let agreement = even_to_matrix(&rotor)?.max_abs_diff(&matrix);
    Ok(Composed {
        rotor,
        matrix,
        agreement,
    })
}

/// Result of comparing two unitaries modulo a global phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseMatch {
    pub equivalent: bool,
    /// `α` with `u ≈ e^{iα} v`.
    pub phase: f64,
    pub residual: f64,
}

/// Finds `e^{iα}` minimizing `‖u - e^{iα} v‖` (Frobenius), `α = arg tr(v† u)`,
/// and reports the largest entrywise residual.
pub fn phase_equivalent(u: &ComplexMatrix, v: &ComplexMatrix, tol: f64) -> Result<PhaseMatch> {
    for m in [u, v] {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::DimensionMismatch(format!("expected 4x4, got {}x{}", m.rows(), m.cols())));
        }
        let dev = m.unitarity_deviation();
        if dev.is_nan() || dev > tol {
            return Err(Error::NotUnitary(dev));
        }
    }
    let z = (&v.dagger() * u).trace()?;
    let phase = if z.norm() == 0.0 { 0.0 } else { z.arg() };
    let residual = u.max_abs_diff(&v.scale(c64(phase.cos(), phase.sin())));
    Ok(PhaseMatch {
        equivalent: residual < tol,
        phase,
        residual,
    })
}
