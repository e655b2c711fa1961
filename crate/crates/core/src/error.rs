use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u32),
    #[error("no generators")]
    NoGenerators,
    #[error("matrix rows have different lengths")]
    RaggedMatrix,
    #[error("matrix entry {value} is not reduced mod {modulus}")]
    EntryOutOfRange { value: u32, modulus: u32 },
    #[error("group of order {0} exceeds the supported bound of 64")]
    TooLarge(usize),
    #[error("invalid Cayley table: {0}")]
    Cayley(String),
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group too large for automorphism enumeration (order {0})")]
    AutomorphismBound(usize),
    #[error("more than {0} automorphisms; group too large for automorphism enumeration")]
    TooManyAutomorphisms(usize),
    #[error("no element with index {0}")]
    NoSuchElement(usize),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("product ≠ identity")]
    ProductNotIdentity,
    #[error("tuple does not generate")]
    NotGenerating,
    #[error("sigma not a central involution")]
    SigmaNotCentralInvolution,
    #[error("identity entry in tuple (position {0})")]
    IdentityEntry(usize),
    #[error("tuple length {0} is below the minimum r = 4")]
    TupleTooShort(usize),
    #[error("inconsistent genus arithmetic: {0}")]
    InconsistentDatum(String),
    #[error("braid index {index} out of range for a tuple of length {len}")]
    BraidIndex { index: usize, len: usize },
    #[error("no admissible prime found for the character table")]
    NoDixonPrime,
    #[error("internal error: {0}")]
    Internal(String),
    #[error("repeated branch point value in sample")]
    RepeatedSample,
    #[error("product system too large for symbolic elimination ({0}); use sampled rank")]
    SymbolicTooLarge(String),
    /// The orbit walk stopped at `cap`; `representative` is the least tuple
    /// seen, which need not be canonical.
    #[error("Hurwitz orbit exceeds {cap} tuples")]
    OrbitTooLarge {
        cap: usize,
        representative: Vec<usize>,
    },
    #[error("{context}: {message}")]
    Parse { context: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
