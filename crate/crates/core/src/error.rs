use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Variants are grouped by the layer that raises them; the CLI maps them onto
/// exit codes with [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // exact arithmetic
    #[error("composite modulus {0}")]
    CompositeModulus(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no discriminant")]
    ConstantPolynomial,
    #[error("not squarefree")]
    NotSquarefree,
    #[error("gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    // number fields
    #[error("parse error: {0}")]
    Parse(String),
    #[error("non-monic polynomial")]
    NonMonic,
    #[error("reducible polynomial: factor {witness}")]
    Reducible { witness: String },
    #[error("irreducibility not certified within search budget")]
    IrreducibilityUncertified,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides index; splitting uncertified")]
    IndexUnsafe { p: u64 },

    // ideals and class data
    #[error("slot index {index} out of range ({len} slots)")]
    SlotOutOfRange { index: usize, len: usize },
    #[error("ideals belong to different fields")]
    FieldMismatch,
    #[error("class data unavailable: {0}")]
    ClassDataUnavailable(String),
    #[error("not an imaginary quadratic field")]
    NotImaginaryQuadratic,

    // invariants
    #[error("not purely imaginary")]
    NotPurelyImaginary,
    #[error("below recovery threshold: (p-1)/m = {lhs} is not > p_max^(nh) - 1 = {rhs}")]
    BelowRecoveryThreshold { lhs: String, rhs: String },
    #[error("prime {p} lies outside the scanned bound {bound}")]
    OutsideBound { p: u64, bound: u64 },
    #[error("insufficient data")]
    InsufficientData,

    // constructible sets
    #[error("level {level} too small: need at least {needed}")]
    LevelTooSmall { level: u32, needed: u32 },
    #[error("marked prime mismatch")]
    MarkedPrimeMismatch,
    #[error("invalid constructible set: {0}")]
    InvalidSet(String),

    // cli plumbing
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the `nfk` binary: 2 for input errors,
    /// 3 for missing class data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ClassDataUnavailable(_) => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
