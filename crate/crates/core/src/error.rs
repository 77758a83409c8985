use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported modulus d={0}: d must be odd and at least 3")]
    UnsupportedModulus(u64),

    #[error("particle count must be at least 1")]
    ZeroParticles,

    #[error("{0} is not invertible modulo {1}")]
    NotInvertible(u32, u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("function domain does not match the submodule")]
    DomainMismatch,

    #[error("vector orders differ ({0} vs {1}); no symplectic map relates them")]
    OrderMismatch(u32, u32),

    #[error("matrix is not symplectic modulo {0}")]
    NotSymplectic(u32),

    #[error("submodule is not isotropic")]
    NotIsotropic,

    #[error("submodule is isotropic but not maximal (size {size}, need {needed})")]
    NotMaximal { size: usize, needed: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("operator is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("state is not normalized (norm {0:.12})")]
    NotNormalized(f64),

    #[error("enumeration budget exceeded: {size} > {limit}")]
    BudgetExceeded { size: u64, limit: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("Gram matrix of the basis is singular")]
    SingularGram,

    #[error("polynomial is not irreducible over F_{0}")]
    Reducible(u32),

    #[error("metaplectic synthesis failed after {0} attempts")]
    SynthesisFailure(usize),

    #[error("value is not exact: {0}")]
    NotExact(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
