use thiserror::Error;

/// Every fallible operation in this crate reports one of these.
///
/// The variants mirror the domain checks of the library: field and
/// polynomial construction, matrix shape checks, and the guards of the
/// classification and transport operations. `code` gives the stable
/// machine-readable name used in CLI error reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^61")]
    PrimeTooLarge(u64),
    #[error("modulus is not monic irreducible: {0}")]
    ReducibleModulus(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("rational factorization supported only up to degree {cap}, got {got}")]
    DegreeCapExceeded { cap: u32, got: u32 },
    #[error("irreducible enumeration requires a finite field")]
    InfiniteField,
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    ShapeMismatch(String),
    #[error("endomorphism is not nilpotent")]
    NotNilpotent,
    #[error("endomorphism is not an automorphism")]
    NotAutomorphism,
    #[error("ideal generator is not t - alpha for the given alpha")]
    NotLinearIdeal,
    #[error("module is not primary for the stated ideal")]
    NotPrimary,
    #[error("residue fields over extension or rational base are limited to degree 1")]
    UnsupportedResidueField,
    #[error("presentation map is not an epimorphism")]
    NotEpimorphism,
    #[error("functor has a nonvanishing structure map; not in the split subcategory")]
    NotInFPrime,
    #[error("class has a negative coefficient at {0}; not realizable")]
    NegativeCoefficient(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::PrimeTooLarge(_) => "PrimeTooLarge",
            Error::ReducibleModulus(_) => "ReducibleModulus",
            Error::FieldMismatch => "FieldMismatch",
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::DivisionByZero => "DivisionByZero",
            Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
            Error::InfiniteField => "InfiniteField",
            Error::NotSquare { .. } => "NotSquare",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotNilpotent => "NotNilpotent",
            Error::NotAutomorphism => "NotAutomorphism",
            Error::NotLinearIdeal => "NotLinearIdeal",
            Error::NotPrimary => "NotPrimary",
            Error::UnsupportedResidueField => "UnsupportedResidueField",
            Error::NotEpimorphism => "NotEpimorphism",
            Error::NotInFPrime => "NotInFPrime",
            Error::NegativeCoefficient(_) => "NegativeCoefficient",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
