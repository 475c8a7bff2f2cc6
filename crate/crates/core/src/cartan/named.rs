//! The Bell-basis maps `Q`, `Q′`, the swap, and their stated factorizations.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ga::{pseudoscalar, CheckLine, Multivector, Signature};
use crate::iso::{GeneratorIndex, TwoQubitAlgebra};
use crate::oracle::{c64, ComplexMatrix};

use super::{compose_factorization, phase_equivalent, Factor, FactorTerm, Factorization, PhaseMatch};

/// Tolerance for the up-to-phase comparisons of the named unitaries.
pub const FACTOR_TOL: f64 = 1e-10;

/// `Q`: columns are Bell states, maps local generators to real matrices.
pub fn q_matrix() -> ComplexMatrix {
    let (o, z, i) = (c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 1.0));
    ComplexMatrix::new(4, 4, vec![o, z, z, i, z, i, o, z, z, i, -o, z, o, z, z, -i])
        .expect("4x4")
        .scale_re(FRAC_1_SQRT_2)
}

/// `Q′`, the real Bell-basis map.
pub fn q_prime_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        4,
        &[1., 0., 0., 1., 0., 1., 1., 0., 0., -1., 1., 0., -1., 0., 0., 1.],
    )
    .expect("4x4")
    .scale_re(FRAC_1_SQRT_2)
}

pub fn swap_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        4,
        &[1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.],
    )
    .expect("4x4")
}

/// `½(1 + IG11 + IG22 + IG33)`.
pub fn pi_printed() -> Multivector {
    let sig = Signature::g6();
    let alg = TwoQubitAlgebra::adopted();
    let i = pseudoscalar(sig);
    let mut x = Multivector::one(sig);
    for k in 1..=3 {
        x = &x + &i.gp(&alg.generator(GeneratorIndex::new(k, k).expect("valid")));
    }
    x.scale(0.5)
}

/// `ϑ = 4π/√27`.
pub fn cartan_theta() -> f64 {
    4.0 * PI / 27f64.sqrt()
}

fn factor(terms: &[((usize, usize), f64)]) -> Factor {
    Factor::of(terms).expect("valid generator indices")
}

/// `exp(-ϑ(G01 - G02 + G03)) exp(ϑ(G10 - G20 + G30)) exp((π/4) G33)
/// exp((π/√8)(G20 - G30)) exp(-ϑ(G01 + G02 + G03))`.
pub fn cartan_q(theta: f64) -> Factorization {
    let r8 = PI / 8f64.sqrt();
    Factorization::new(vec![
        factor(&[((0, 1), -theta), ((0, 2), theta), ((0, 3), -theta)]),
        factor(&[((1, 0), theta), ((2, 0), -theta), ((3, 0), theta)]),
        factor(&[((3, 3), FRAC_PI_4)]),
        factor(&[((2, 0), r8), ((3, 0), -r8)]),
        factor(&[((0, 1), -theta), ((0, 2), -theta), ((0, 3), -theta)]),
    ])
}

/// How to read the scalar `i` multiplying the second exponent of the `Q′`
/// factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ImaginaryReading {
    /// `i` is the pseudoscalar `I`.
    Pseudoscalar,
    /// `i` is dropped.
    Dropped,
}

/// `exp(-ϑ(G01 + G02 + G03)) exp(iϑ(G10 + G20 + G30)) exp((π/4) G33)
/// exp(ϑ(G01 + G02 + G03)) exp(-ϑ(G10 + G20 + G30))`.
pub fn cartan_q_prime(theta: f64, reading: ImaginaryReading) -> Factorization {
    let pseudo = reading == ImaginaryReading::Pseudoscalar;
    let second = Factor::new(
        (1..=3)
            .map(|k| FactorTerm {
                pseudo,
                ..FactorTerm::new(GeneratorIndex::new(k, 0).expect("valid"), theta)
            })
            .collect(),
    );
    Factorization::new(vec![
        factor(&[((0, 1), -theta), ((0, 2), -theta), ((0, 3), -theta)]),
        second,
        factor(&[((3, 3), FRAC_PI_4)]),
        factor(&[((0, 1), theta), ((0, 2), theta), ((0, 3), theta)]),
        factor(&[((1, 0), -theta), ((2, 0), -theta), ((3, 0), -theta)]),
    ])
}

/// `exp((π/4) G21)`.
pub fn q_prime_rotation() -> Factorization {
    Factorization::new(vec![factor(&[((2, 1), FRAC_PI_4)])])
}

/// `exp((π/4)(G11 + G22 + G33))`.
pub fn swap_factorization() -> Factorization {
    Factorization::new(vec![factor(&[((1, 1), FRAC_PI_4), ((2, 2), FRAC_PI_4), ((3, 3), FRAC_PI_4)])])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FactorTarget {
    Q,
    QPrime,
    Swap,
}

impl FromStr for FactorTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "q" => Ok(Self::Q),
            "qprime" | "q'" => Ok(Self::QPrime),
            "swap" => Ok(Self::Swap),
            _ => Err(Error::Parse(format!("unknown factorization target {s:?} (Q, Qprime, swap)"))),
        }
    }
}

impl fmt::Display for FactorTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Q => "Q",
            Self::QPrime => "Qprime",
            Self::Swap => "swap",
        })
    }
}

/// One composed candidate against its target.
#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub name: String,
    pub factorization: Factorization,
    pub matrix: ComplexMatrix,
    /// Disagreement between the rotor and matrix compositions.
    pub agreement: f64,
    /// `None` when the composition is not unitary.
    pub phase_match: Option<PhaseMatch>,
    pub unitarity_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorCheckReport {
    pub target: FactorTarget,
    pub target_matrix: ComplexMatrix,
    pub candidates: Vec<Candidate>,
    /// Extra exact identities, e.g. the rotor form of the swap.
    pub lines: Vec<CheckLine>,
}

impl FactorCheckReport {
    pub fn pass(&self) -> bool {
        self.candidates.iter().all(|c| c.pass) && self.lines.iter().all(|l| l.pass)
    }
}

fn candidate(name: &str, f: Factorization, target: &ComplexMatrix) -> Result<Candidate> {
    let c = compose_factorization(&f)?;
    let unitarity_deviation = c.matrix.unitarity_deviation();
    let phase_match = phase_equivalent(&c.matrix, target, FACTOR_TOL).ok();
    let pass = phase_match.map(|m| m.equivalent).unwrap_or(false) && c.agreement < FACTOR_TOL;
    Ok(Candidate {
        name: name.into(),
        factorization: f,
        matrix: c.matrix,
        agreement: c.agreement,
        phase_match,
        unitarity_deviation,
        pass,
    })
}

/// Composes the stated factorizations of `target` and compares each with
/// the target matrix up to a global phase.
pub fn factor_check(target: FactorTarget) -> Result<FactorCheckReport> {
    let theta = cartan_theta();
    let mut lines = Vec::new();
    let (target_matrix, candidates) = match target {
        FactorTarget::Q => {
            let m = q_matrix();
            let c = vec![candidate("five-factor form, theta = 4 pi / sqrt 27", cartan_q(theta), &m)?];
            (m, c)
        }
        FactorTarget::QPrime => {
            let m = q_prime_matrix();
            let rot = candidate("exp((pi/4) G21)", q_prime_rotation(), &m)?;
            let exact = rot.matrix.max_abs_diff(&m);
            lines.push(CheckLine::new("exp((pi/4) G21) equals Q' entrywise", exact, 1e-12));
            let c = vec![
                rot,
                candidate(
                    "five-factor form, i read as I",
                    cartan_q_prime(theta, ImaginaryReading::Pseudoscalar),
                    &m,
                )?,
                candidate(
                    "five-factor form, i dropped",
                    cartan_q_prime(theta, ImaginaryReading::Dropped),
                    &m,
                )?,
            ];
            (m, c)
        }
        FactorTarget::Swap => {
            let m = swap_matrix();
            let c = candidate("exp((pi/4)(G11 + G22 + G33))", swap_factorization(), &m)?;
            let rotor = compose_factorization(&swap_factorization())?.rotor;
            lines.push(CheckLine::new(
                "exp((pi/4)(G11 + G22 + G33)) = (1 + IG11 + IG22 + IG33)/2 exactly",
                rotor.max_abs_diff(&pi_printed()),
                1e-12,
            ));
            let shifted = crate::ga::exp_series(&pseudoscalar(Signature::g6()).scale(FRAC_PI_4), crate::ga::EXP_TOL)?
                .gp(&rotor);
            lines.push(CheckLine::new(
                "exp(I pi/4) exp((pi/4)(G11 + G22 + G33)) = (1 + IG11 + IG22 + IG33)/2",
                shifted.max_abs_diff(&pi_printed()),
                1e-12,
            ));
            let printed = crate::iso::even_to_matrix(&pi_printed())?;
            lines.push(CheckLine::new(
                "(1 + IG11 + IG22 + IG33)/2 maps to SWAP",
                printed.max_abs_diff(&m),
                FACTOR_TOL,
            ));
            (m, vec![c])
        }
    };
    Ok(FactorCheckReport {
        target,
        target_matrix,
        candidates,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::{even_to_matrix, generator_matrix};
    use crate::oracle::{expm, EXPM_TOL};

    #[test]
    fn named_matrices_are_unitary() {
        for m in [q_matrix(), q_prime_matrix(), swap_matrix()] {
            assert!(m.unitarity_deviation() < 1e-15);
        }
    }

    #[test]
    fn q_prime_is_a_single_rotation() {
        // A = mat(G21) squares to -1, so exp((π/4)A) = (1 + A)/√2
        let a = generator_matrix(GeneratorIndex::new(2, 1).unwrap());
        assert!((&a * &a).max_abs_diff(&ComplexMatrix::identity(4).scale_re(-1.0)) < 1e-15);
        let closed = (&ComplexMatrix::identity(4) + &a).scale_re(FRAC_1_SQRT_2);
        assert!(closed.max_abs_diff(&q_prime_matrix()) < 1e-15);
        let e = expm(&a.scale_re(FRAC_PI_4), EXPM_TOL).unwrap();
        assert!(e.max_abs_diff(&q_prime_matrix()) < 1e-12);
    }

    #[test]
    fn swap_rotor_differs_from_printed_form_by_a_pseudoscalar_phase() {
        let r = compose_factorization(&swap_factorization()).unwrap();
        assert!(r.rotor.max_abs_diff(&pi_printed()) > 0.1);
        assert!(even_to_matrix(&pi_printed()).unwrap().max_abs_diff(&swap_matrix()) < 1e-15);
        let m = phase_equivalent(&r.matrix, &swap_matrix(), FACTOR_TOL).unwrap();
        assert!(m.equivalent);
        assert!((m.phase - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn reports() {
        let q = factor_check(FactorTarget::Q).unwrap();
        assert!(!q.pass());
        let r = q.candidates[0].phase_match.unwrap();
        assert!(r.residual > 0.5);
        let qp = factor_check(FactorTarget::QPrime).unwrap();
        assert!(qp.candidates[0].pass && qp.candidates[2].pass);
        assert!(!qp.candidates[1].pass);
        assert!(qp.candidates[1].unitarity_deviation > 1.0);
        let s = factor_check(FactorTarget::Swap).unwrap();
        assert!(s.candidates[0].pass);
        assert!(!s.lines[0].pass && s.lines[1].pass && s.lines[2].pass);
        assert!("qprime".parse::<FactorTarget>().is_ok());
        assert!("R".parse::<FactorTarget>().is_err());
    }
}
