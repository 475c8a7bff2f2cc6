use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("signature ({p},{q}) exceeds the supported dimension of 16")]
    SignatureTooLarge { p: usize, q: usize },

    #[error("blade mask {mask:#b} does not fit a {dim}-dimensional signature")]
    BladeOutOfRange { mask: u32, dim: usize },

    #[error("signature mismatch: ({0},{1}) vs ({2},{3})")]
    SignatureMismatch(usize, usize, usize, usize),

    #[error("grade {grade} out of range for dimension {dim}")]
    GradeOutOfRange { grade: usize, dim: usize },

    #[error("series did not converge within {0} terms")]
    NonConvergence(usize),

    #[error("not a rotor: |R R~ - 1| = {0:e}")]
    NotARotor(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("Pauli label {0} out of range 0..=3")]
    PauliLabel(usize),

    #[error("invalid generator index ({0},{1})")]
    GeneratorIndex(usize, usize),

    #[error("multivector has odd-grade content (max |coeff| {0:e})")]
    OddGrade(f64),

    #[error("density operator is not trace-normalized: <rho>_0 = {0}")]
    NotNormalized(f64),

    #[error("Kraus index {0} out of range 1..=6")]
    KrausIndex(usize),

    #[error("invalid bipartition: {0}")]
    Bipartition(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
