use std::ops::Mul;

use crate::error::{Error, Result};

use super::{Multivector, Signature};

/// Series truncation tolerance for exponentials.
pub const EXP_TOL: f64 = 1e-14;
/// Scaling threshold: the argument is halved until its 1-norm is at most this.
const SQUARING_THRESHOLD: f64 = 0.5;
const MAX_TERMS: usize = 200;
const MAX_SQUARINGS: u32 = 1100;
/// Tolerance for the rotor normalization invariant.
pub const ROTOR_TOL: f64 = 1e-10;

/// Closed form when `b² = s` is a scalar: `cos`/`sin`, `cosh`/`sinh`, or
/// `1 + b` when `b² = 0`.
fn exp_closed_form(b: &Multivector) -> Option<Multivector> {
    let sq = b * b;
    if sq.terms().iter().any(|t| t.0.grade() != 0) {
        return None;
    }
    let s = sq.scalar_part();
    let sig = b.signature();
    let (c, k) = if s < 0.0 {
        let theta = (-s).sqrt();
        (theta.cos(), theta.sin() / theta)
    } else if s > 0.0 {
        let theta = s.sqrt();
        (theta.cosh(), theta.sinh() / theta)
    } else {
        (1.0, 1.0)
    };
    Some(&Multivector::scalar(sig, c) + &b.scale(k))
}

/// Exponential by power series with scaling and squaring. Terminates when
/// the 1-norm of a series term drops below `tol`.
pub fn exp_series(b: &Multivector, tol: f64) -> Result<Multivector> {
    let sig = b.signature();
    if b.is_zero() {
        return Ok(Multivector::one(sig));
    }
    if b.terms().iter().any(|t| !t.1.is_finite()) {
        return Err(Error::NonConvergence(0));
    }
    // Scalar content commutes with everything; split it off.
    let a0 = b.scalar_part();
    let rest = b - &Multivector::scalar(sig, a0);
    let core = match exp_closed_form(&rest) {
        Some(x) => x,
        None => series_scaled(&rest, tol)?,
    };
    Ok(core.scale(a0.exp()))
}

fn series_scaled(b: &Multivector, tol: f64) -> Result<Multivector> {
    let sig = b.signature();
    let norm = b.norm1();
    if !norm.is_finite() {
        return Err(Error::NonConvergence(0));
    }
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > SQUARING_THRESHOLD {
        scaled_norm /= 2.0;
        squarings += 1;
        if squarings > MAX_SQUARINGS {
            return Err(Error::NonConvergence(MAX_TERMS));
        }
    }
    let x = b.scale(0.5f64.powi(squarings as i32));
    let mut sum = Multivector::one(sig);
    let mut term = Multivector::one(sig);
    let mut converged = false;
    for n in 1..=MAX_TERMS {
        term = (&term * &x).scale(1.0 / n as f64);
        sum = &sum + &term;
        if term.norm1() < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(MAX_TERMS));
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

/// Exponential of an even element, returned as a normalized rotor.
///
/// Fails with [`Error::OddGrade`] on odd input and [`Error::NotARotor`] when
/// the result is not unit (e.g. the exponent contains reversion-symmetric
/// grade-4 content).
pub fn exp_even(b: &Multivector, tol: f64) -> Result<Rotor> {
    let odd = b.odd_magnitude();
    if odd > 0.0 {
        return Err(Error::OddGrade(odd));
    }
    Rotor::new(exp_series(b, tol)?)
}

/// Unit element of the even subalgebra: `R R~ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotor {
    value: Multivector,
}

impl Rotor {
    pub fn new(value: Multivector) -> Result<Self> {
        let odd = value.odd_magnitude();
        if odd > 0.0 {
            return Err(Error::OddGrade(odd));
        }
        let dev = (&value * &value.reverse()).max_abs_diff(&Multivector::one(value.signature()));
        if dev > ROTOR_TOL {
            return Err(Error::NotARotor(dev));
        }
        Ok(Self { value })
    }

    pub fn identity(sig: Signature) -> Self {
        Self {
            value: Multivector::one(sig),
        }
    }

    /// `exp(b)` for an even `b`; see [`exp_even`].
    pub fn exp(b: &Multivector) -> Result<Self> {
        exp_even(b, EXP_TOL)
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn into_value(self) -> Multivector {
        self.value
    }

    pub fn reverse(&self) -> Rotor {
        Rotor {
            value: self.value.reverse(),
        }
    }

    /// `R x R~`.
    pub fn conjugate(&self, x: &Multivector) -> Multivector {
        &(&self.value * x) * &self.value.reverse()
    }
}

impl Mul for &Rotor {
    type Output = Rotor;
    fn mul(self, rhs: &Rotor) -> Rotor {
        Rotor {
            value: &self.value * &rhs.value,
        }
    }
}
