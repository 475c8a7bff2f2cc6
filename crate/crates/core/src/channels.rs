//! The vector-conjugation Kraus sums `M_k ρ = ρ + ¼ e_k ρ̂ e_k` on `G⁺(6)`,
//! their superoperators, and Choi-matrix tests of complete positivity.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ga::{pseudoscalar, Multivector, Signature};
use crate::iso::{even_to_matrix, DensityOperator, GeneratorIndex, TwoQubitAlgebra};
use crate::oracle::{c64, eig_hermitian, ComplexMatrix};

/// Hermiticity and trace-preservation tolerance.
pub const CHANNEL_TOL: f64 = 1e-10;
/// Eigenvalue tolerance for positivity and the boundary.
pub const CHOI_TOL: f64 = 1e-9;

/// `k ∈ 1..=6`: `e₁, e₂, e₃, f₁, f₂, f₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct KrausIndex(usize);

impl KrausIndex {
    pub fn new(k: usize) -> Result<Self> {
        if (1..=6).contains(&k) {
            Ok(Self(k))
        } else {
            Err(Error::KrausIndex(k))
        }
    }

    pub fn all() -> [KrausIndex; 6] {
        std::array::from_fn(|n| KrausIndex(n + 1))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn vector(self) -> Multivector {
        Multivector::basis_vector(Signature::g6(), self.0).expect("k in 1..=6")
    }
}

impl fmt::Display for KrausIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 <= 3 {
            write!(f, "e{}", self.0)
        } else {
            write!(f, "f{}", self.0 - 3)
        }
    }
}

/// Linear form of the map, `x + ¼ e (x - ⟨x⟩₀) e`; agrees with the
/// definition `ρ̂ = ρ - ¼` on normalized input.
pub fn kraus_linear(k: KrausIndex, x: &Multivector) -> Multivector {
    let e = k.vector();
    let hat = x - &Multivector::scalar(x.signature(), x.scalar_part());
    x + &e.gp(&hat).gp(&e).scale(0.25)
}

pub fn kraus_apply(k: KrausIndex, rho: &DensityOperator) -> Result<DensityOperator> {
    rho.require_normalized()?;
    DensityOperator::new(kraus_linear(k, rho.rho()))
}

/// `{1, IG_ij}`: their images `I₄` and `σ_i ⊗ σ_j` span the Hermitian 4×4
/// matrices.
pub fn hermitian_basis() -> Vec<Multivector> {
    let sig = Signature::g6();
    let i = pseudoscalar(sig);
    let alg = TwoQubitAlgebra::adopted();
    std::iter::once(Multivector::one(sig))
        .chain(GeneratorIndex::all().into_iter().map(|g| i.gp(&alg.generator(g))))
        .collect()
}

/// 16×16 action on column-stacked 4×4 matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Superoperator {
    pub matrix: ComplexMatrix,
}

impl Superoperator {
    pub fn identity() -> Self {
        Self {
            matrix: ComplexMatrix::identity(16),
        }
    }

    /// Complex-linear extension of a real-linear map on `G⁺(6)` from its
    /// values on [`hermitian_basis`]. The basis images are orthogonal with
    /// `tr(H_a† H_b) = 4 δ_ab`, so `S = ¼ Σ vec(Φ(H_a)) vec(H_a)†`.
    pub fn from_even_map(f: impl Fn(&Multivector) -> Multivector) -> Result<Self> {
        let mut s = ComplexMatrix::zeros(16, 16);
        for h in hermitian_basis() {
            let input = even_to_matrix(&h)?.vec_columns();
            let output = even_to_matrix(&f(&h))?.vec_columns();
            for (r, o) in output.iter().enumerate() {
                for (c, i) in input.iter().enumerate() {
                    s.set(r, c, s.get(r, c) + o * i.conj() * 0.25);
                }
            }
        }
        Ok(Self { matrix: s })
    }

    pub fn apply(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::DimensionMismatch(format!("expected 4x4, got {}x{}", m.rows(), m.cols())));
        }
        ComplexMatrix::from_vec_columns(4, &self.matrix.apply(&m.vec_columns())?)
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Superoperator) -> Superoperator {
        Superoperator {
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn midpoint(&self, other: &Superoperator) -> Superoperator {
        Superoperator {
            matrix: (&self.matrix + &other.matrix).scale_re(0.5),
        }
    }

    /// `Σ E_ij ⊗ Φ(E_ij)`.
    pub fn choi(&self) -> ComplexMatrix {
        let mut c = ComplexMatrix::zeros(16, 16);
        for i in 0..4 {
            for j in 0..4 {
                let mut e = ComplexMatrix::zeros(4, 4);
                e.set(i, j, c64(1.0, 0.0));
                let image = self.apply(&e).expect("4x4");
                for p in 0..4 {
                    for q in 0..4 {
                        c.set(4 * i + p, 4 * j + q, image.get(p, q));
                    }
                }
            }
        }
        c
    }
}

pub fn superoperator_of(k: KrausIndex) -> Result<Superoperator> {
    Superoperator::from_even_map(|x| kraus_linear(k, x))
}

#[derive(Debug, Clone, Serialize)]
pub struct ChoiCheck {
    pub hermiticity: f64,
    /// `max |Tr_out C - I|`.
    pub trace_deviation: f64,
    pub trace_preserving: bool,
    pub eigenvalues: Vec<f64>,
    pub min_eig: f64,
    pub completely_positive: bool,
    /// CP with an eigenvalue within [`CHOI_TOL`] of zero.
    pub boundary: bool,
}

pub fn choi_check(s: &Superoperator) -> Result<ChoiCheck> {
    let c = s.choi();
    let hermiticity = c.hermiticity_deviation();
    let mut trace_deviation: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let t = (0..4).map(|p| c.get(4 * i + p, 4 * j + p)).sum::<num_complex::Complex64>();
            let want = if i == j { 1.0 } else { 0.0 };
            trace_deviation = trace_deviation.max((t - c64(want, 0.0)).norm());
        }
    }
    let eig = eig_hermitian(&c)?;
    let min_eig = eig.min();
    let completely_positive = min_eig >= -CHOI_TOL;
    Ok(ChoiCheck {
        hermiticity,
        trace_deviation,
        trace_preserving: trace_deviation < CHANNEL_TOL,
        eigenvalues: eig.values,
        min_eig,
        completely_positive,
        boundary: completely_positive && min_eig <= CHOI_TOL,
    })
}

/// Per-channel summary in the report layout.
#[derive(Debug, Clone, Serialize)]
pub struct ChannelReport {
    pub k: usize,
    pub vector: String,
    pub trace_preserving: bool,
    pub min_choi_eig: f64,
    pub boundary: bool,
    pub completely_positive: bool,
    pub choi_hermiticity: f64,
}

pub fn channel_report(k: KrausIndex) -> Result<ChannelReport> {
    let c = choi_check(&superoperator_of(k)?)?;
    Ok(ChannelReport {
        k: k.get(),
        vector: k.to_string(),
        trace_preserving: c.trace_preserving,
        min_choi_eig: c.min_eig,
        boundary: c.boundary,
        completely_positive: c.completely_positive,
        choi_hermiticity: c.hermiticity,
    })
}
