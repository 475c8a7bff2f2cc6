use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga::{pseudoscalar, Multivector, Rotor, Signature};
use crate::oracle::{c64, eig_hermitian, ComplexMatrix, C64};

use super::{even_to_matrix, p3p3, reference_index, GeneratorIndex, TwoQubitAlgebra};

const IDEAL_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-12;

/// Upper bounds on `⟨ρ̂²⟩₀, ⟨ρ̂³⟩₀, ⟨ρ̂⁴⟩₀` for density operators.
pub const PURITY_BOUNDS: [f64; 3] = [3.0 / 16.0, 3.0 / 32.0, 15.0 / 128.0];
/// The same moments for any pure state.
pub const PURE_MOMENTS: [f64; 3] = [3.0 / 16.0, 3.0 / 32.0, 21.0 / 256.0];

/// Magnitude, phase and six angles of a pure two-qubit state, all angles in
/// radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchmidtParams {
    pub rho: f64,
    pub phi: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub tau: f64,
    pub sigma: f64,
}

impl SchmidtParams {
    /// `ϱ = 1` and every angle zero: the reference state.
    pub fn reference() -> Self {
        Self {
            rho: 1.0,
            phi: 0.0,
            phi1: 0.0,
            phi2: 0.0,
            theta1: 0.0,
            theta2: 0.0,
            tau: 0.0,
            sigma: 0.0,
        }
    }

    /// The parameters given for the singlet: `ϑ² = π`, `ς = -π/2`.
    pub fn singlet() -> Self {
        Self {
            theta2: std::f64::consts::PI,
            sigma: -std::f64::consts::FRAC_PI_2,
            ..Self::reference()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.rho,
            self.phi,
            self.phi1,
            self.phi2,
            self.theta1,
            self.theta2,
            self.tau,
            self.sigma,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse("Schmidt parameters must be finite".into()));
        }
        if self.rho < 0.0 {
            return Err(Error::Parse(format!("negative magnitude {}", self.rho)));
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let p: Self = serde_json::from_str(s)?;
        p.validate()?;
        Ok(p)
    }
}

/// Element `Ψ P₃¹P₃²` of the left ideal generated by the reference idempotent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateIdeal {
    psi: Multivector,
}

impl StateIdeal {
    /// Fails unless `psi` is even, in `G(6)`, and fixed by right
    /// multiplication with `P₃¹P₃²`.
    pub fn new(psi: Multivector) -> Result<Self> {
        Signature::g6().check_same(psi.signature())?;
        let odd = psi.odd_magnitude();
        if odd > 0.0 {
            return Err(Error::OddGrade(odd));
        }
        let dev = psi.gp(&p3p3()).max_abs_diff(&psi);
        if dev > IDEAL_TOL {
            return Err(Error::Decomposition(format!(
                "element is not in the state ideal (|psi P - psi| = {dev:e})"
            )));
        }
        Ok(Self { psi })
    }

    pub fn psi(&self) -> &Multivector {
        &self.psi
    }

    /// `⟨ψ ψ~⟩₀`, equal to `ϱ²/4`.
    pub fn norm_sq(&self) -> f64 {
        self.psi.gp(&self.psi.reverse()).scalar_part()
    }

    /// The Hilbert-space vector: the one nonzero column of the matrix image.
    pub fn state_vector(&self) -> Result<Vec<C64>> {
        Ok(even_to_matrix(&self.psi)?.column(reference_index()))
    }
}

/// Reversion-symmetric even element standing for a density matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityOperator {
    rho: Multivector,
}

impl DensityOperator {
    pub fn new(rho: Multivector) -> Result<Self> {
        Signature::g6().check_same(rho.signature())?;
        let odd = rho.odd_magnitude();
        if odd > 0.0 {
            return Err(Error::OddGrade(odd));
        }
        let dev = rho.reverse().max_abs_diff(&rho);
        if dev > IDEAL_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { rho })
    }

    /// `¼`, the image of `I₄ / 4`.
    pub fn maximally_mixed() -> Self {
        Self {
            rho: Multivector::scalar(Signature::g6(), 0.25),
        }
    }

    /// Convex combination; weights are used as given.
    pub fn mixture(parts: &[(f64, &DensityOperator)]) -> Result<Self> {
        let mut acc = Multivector::zero(Signature::g6());
        for (w, d) in parts {
            acc = &acc + &d.rho.scale(*w);
        }
        Self::new(acc)
    }

    pub fn rho(&self) -> &Multivector {
        &self.rho
    }

    pub fn into_rho(self) -> Multivector {
        self.rho
    }

    pub fn scalar_part(&self) -> f64 {
        self.rho.scalar_part()
    }

    pub fn require_normalized(&self) -> Result<()> {
        let s = self.scalar_part();
        if (s - 0.25).abs() > NORM_TOL {
            return Err(Error::NotNormalized(s));
        }
        Ok(())
    }

    /// `ρ - ⟨ρ⟩₀`, the traceless part.
    pub fn traceless(&self) -> Multivector {
        &self.rho - &Multivector::scalar(self.rho.signature(), self.scalar_part())
    }

    pub fn matrix(&self) -> Result<ComplexMatrix> {
        even_to_matrix(&self.rho)
    }
}

fn generator(i: usize, j: usize) -> Multivector {
    TwoQubitAlgebra::adopted().generator(GeneratorIndex::new(i, j).expect("valid index"))
}

fn exp(b: Multivector) -> Result<Multivector> {
    Ok(Rotor::exp(&b)?.into_value())
}

/// `ϱ e^{-Iφ} e^{-φ¹/2 G30 - φ²/2 G03} e^{-ϑ¹/2 G20 - ϑ²/2 G02}
/// e^{-τ/2 (G30 + G03)} e^{-ς/2 G22}`, without the idempotent.
pub fn schmidt_rotor(p: &SchmidtParams) -> Result<Multivector> {
    p.validate()?;
    let sig = Signature::g6();
    let (g30, g03) = (generator(3, 0), generator(0, 3));
    let (g20, g02) = (generator(2, 0), generator(0, 2));
    let factors = [
        exp(pseudoscalar(sig).scale(-p.phi))?,
        exp(&g30.scale(-p.phi1 / 2.0) + &g03.scale(-p.phi2 / 2.0))?,
        exp(&g20.scale(-p.theta1 / 2.0) + &g02.scale(-p.theta2 / 2.0))?,
        exp((&g30 + &g03).scale(-p.tau / 2.0))?,
        exp(generator(2, 2).scale(-p.sigma / 2.0))?,
    ];
    Ok(Multivector::product_of(sig, &factors).scale(p.rho))
}

/// The state `Ψ P₃¹P₃²` for the given parameters, factors multiplied left to
/// right.
pub fn state_from_schmidt(p: &SchmidtParams) -> Result<StateIdeal> {
    let psi = schmidt_rotor(p)?.gp(&p3p3());
    StateIdeal::new(psi)
}

/// `Ψ P₃¹P₃² Ψ~` for a state with `ϱ = 1`.
pub fn density_from_state(s: &StateIdeal) -> Result<DensityOperator> {
    let n = s.norm_sq();
    if (n - 0.25).abs() > NORM_TOL {
        return Err(Error::NotNormalized(n));
    }
    let rho = s.psi.gp(&s.psi.reverse());
    // exact in exact arithmetic; symmetrize away rounding
    DensityOperator::new((&rho + &rho.reverse()).scale(0.5))
}

/// `⟨ρ̂^k⟩₀` for `k = 2, 3, 4`, with `ρ̂ = ρ - ¼`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PurityMoments {
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
}

impl PurityMoments {
    pub fn as_array(&self) -> [f64; 3] {
        [self.m2, self.m3, self.m4]
    }

    /// Each moment is at most its bound plus `slack`.
    pub fn within_bounds(&self, slack: f64) -> [bool; 3] {
        let m = self.as_array();
        [0, 1, 2].map(|k| m[k] <= PURITY_BOUNDS[k] + slack)
    }
}

pub fn purity_moments(rho: &DensityOperator) -> Result<PurityMoments> {
    rho.require_normalized()?;
    let h = rho.traceless();
    let h2 = h.gp(&h);
    let h3 = h2.gp(&h);
    Ok(PurityMoments {
        m2: h2.scalar_part(),
        m3: h3.scalar_part(),
        m4: h2.gp(&h2).scalar_part(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    /// `-x log x`, zero at `x = 0`.
    fn neg_xlogx(self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match self {
            LogBase::Natural => -x * x.ln(),
            LogBase::Two => -x * x.log2(),
        }
    }
}

/// `-c log c - s log s` with `c = cos(ς/2)`, `s = sin(ς/2)`, as stated for the
/// Schmidt parametrization. Magnitudes are used so negative `ς` (as in the
/// singlet parameters) stays real.
pub fn entanglement_entropy(p: &SchmidtParams, base: LogBase) -> f64 {
    let c = (p.sigma / 2.0).cos().abs();
    let s = (p.sigma / 2.0).sin().abs();
    base.neg_xlogx(c) + base.neg_xlogx(s)
}

/// Von Neumann entropy `-Σ λ log λ` of the first qubit's reduced state,
/// computed from the matrix image. The `λ` are the squared Schmidt
/// coefficients.
pub fn standard_entropy(s: &StateIdeal, base: LogBase) -> Result<f64> {
    let v = s.state_vector()?;
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if norm == 0.0 {
        return Err(Error::NotNormalized(0.0));
    }
    let reduced = ComplexMatrix::from_fn(2, 2, |a, b| {
        (0..2).map(|k| v[2 * a + k] * v[2 * b + k].conj()).sum::<C64>() / norm
    });
    let e = eig_hermitian(&reduced)?;
    Ok(e.values.iter().map(|&x| base.neg_xlogx(x)).sum())
}

/// The Hilbert-space Schmidt form
/// `ϱ e^{-iφ} (cos(ς/2) e^{-iτ/2} a¹⊗a² + sin(ς/2) e^{iτ/2} b¹⊗b²)` with
/// `a = (cos(ϑ/2) e^{-iφ/2}, sin(ϑ/2) e^{iφ/2})` and
/// `b = (sin(ϑ/2) e^{-iφ/2}, -cos(ϑ/2) e^{iφ/2})`.
pub fn schmidt_hilbert_vector(p: &SchmidtParams) -> Vec<C64> {
    let cis = |t: f64| c64(t.cos(), t.sin());
    let a = |t: f64, f: f64| [cis(-f / 2.0) * (t / 2.0).cos(), cis(f / 2.0) * (t / 2.0).sin()];
    let b = |t: f64, f: f64| [cis(-f / 2.0) * (t / 2.0).sin(), -cis(f / 2.0) * (t / 2.0).cos()];
    let kron = |x: [C64; 2], y: [C64; 2]| [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]];
    let aa = kron(a(p.theta1, p.phi1), a(p.theta2, p.phi2));
    let bb = kron(b(p.theta1, p.phi1), b(p.theta2, p.phi2));
    let ca = cis(-p.tau / 2.0) * (p.sigma / 2.0).cos();
    let cb = cis(p.tau / 2.0) * (p.sigma / 2.0).sin();
    let pre = cis(-p.phi) * p.rho;
    (0..4).map(|k| pre * (ca * aa[k] + cb * bb[k])).collect()
}

/// `(G20 - G02)/√2 · P₃¹P₃²`, the singlet state as printed.
pub fn singlet_psi_printed() -> Multivector {
    (&generator(2, 0) - &generator(0, 2)).scale(FRAC_1_SQRT_2).gp(&p3p3())
}

/// `¼(1 - IG11 - IG22 - IG33)`, the singlet density as printed.
pub fn singlet_density_printed() -> Multivector {
    let sig = Signature::g6();
    let i = pseudoscalar(sig);
    let mut rho = Multivector::one(sig);
    for k in 1..=3 {
        rho = &rho - &i.gp(&generator(k, k));
    }
    rho.scale(0.25)
}
