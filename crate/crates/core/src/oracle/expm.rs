use crate::error::{Error, Result};

use super::ComplexMatrix;

/// Default relative truncation tolerance for the Taylor series.
pub const EXPM_TOL: f64 = 1e-16;

const SQUARING_THRESHOLD: f64 = 0.5;
const MAX_TERMS: usize = 200;
const MAX_SQUARINGS: u32 = 1100;

/// Matrix exponential by scaling and squaring around a truncated Taylor
/// series.
pub fn expm(a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    let norm = a.norm_inf();
    if a.data().iter().any(|z| !z.is_finite()) {
        return Err(Error::NonConvergence(0));
    }
    let mut squarings = 0u32;
    let mut scaled = norm;
    while scaled > SQUARING_THRESHOLD {
        scaled *= 0.5;
        squarings += 1;
        if squarings > MAX_SQUARINGS {
            return Err(Error::NonConvergence(MAX_TERMS));
        }
    }
    let x = a.scale_re(0.5f64.powi(squarings as i32));

    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    let mut converged = false;
    for k in 1..=MAX_TERMS {
        term = (&term * &x).scale_re(1.0 / k as f64);
        sum = &sum + &term;
        if term.norm_inf() <= tol * sum.norm_inf() {
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
