//! The single-qubit model in `G(3,0)`: spinors `Ψ P₃` with
//! `P₃ = ½(1 + e3)`, expectation values and Bloch vectors.

use crate::error::{Error, Result};
use crate::ga::{Blade, Multivector, Signature};
use crate::oracle::{pauli, ComplexMatrix};

fn require_g3(x: &Multivector) -> Result<()> {
    Signature::g3().check_same(x.signature())
}

/// `½(1 + e3)`.
pub fn p3() -> Multivector {
    let sig = Signature::g3();
    (&Multivector::one(sig) + &Multivector::basis_vector(sig, 3).expect("e3")).scale(0.5)
}

/// `⟨Ψ~ a Ψ P₃⟩₀`, equal to `½⟨ψ|a·σ|ψ⟩`.
pub fn expectation(psi: &Multivector, a: &Multivector) -> Result<f64> {
    require_g3(psi)?;
    require_g3(a)?;
    Ok(psi.reverse().gp(a).gp(psi).gp(&p3()).scalar_part())
}

/// `b = Ψ e3 Ψ~` as components `(b1, b2, b3)`.
pub fn bloch_vector(psi: &Multivector) -> Result<[f64; 3]> {
    require_g3(psi)?;
    let e3 = Multivector::basis_vector(Signature::g3(), 3)?;
    let b = psi.gp(&e3).gp(&psi.reverse());
    Ok([1, 2, 3].map(|k| b.coeff(Blade::vector(k))))
}

/// `2⟨Ψ P₃ Ψ~⟩`, which is `1 + b` for a unit rotor.
pub fn density(psi: &Multivector) -> Result<Multivector> {
    require_g3(psi)?;
    Ok(psi.gp(&p3()).gp(&psi.reverse()).scale(2.0))
}

/// Pauli representation: `e_k ↦ σ_k`, extended multiplicatively.
pub fn pauli_image(x: &Multivector) -> Result<ComplexMatrix> {
    require_g3(x)?;
    let mut out = ComplexMatrix::zeros(2, 2);
    for &(b, c) in x.terms() {
        let m = b
            .indices()
            .into_iter()
            .try_fold(ComplexMatrix::identity(2), |acc, k| pauli(k).map(|s| &acc * &s))
            .map_err(|_| Error::BladeOutOfRange { mask: b.0, dim: 3 })?;
        out = &out + &m.scale_re(c);
    }
    Ok(out)
}
