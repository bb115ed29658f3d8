use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Mathematical verdicts (a failed closedness check, a degenerate pairing, a
/// residue in the master equation) are *not* errors: they are returned as
/// ordinary values carrying a witness. This type is reserved for malformed
/// input, violated preconditions, and truncations that are too small to
/// decide anything.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("polynomial refers to generator #{index}, but the algebra has only {len} generators")]
    ForeignGenerator { index: usize, len: usize },
    #[error("odd generator `{0}` appears with exponent > 1")]
    OddExponent(String),
    #[error("value of `{generator}` under the derivation is not homogeneous of the expected bidegree")]
    DerivationBidegree { generator: String },
    #[error("expected a homogeneous element: {0}")]
    Inhomogeneous(String),
    #[error("the requested piece has {size} basis monomials (limit {limit}); shrink the cap or window")]
    PieceTooLarge { size: usize, limit: usize },
    #[error("empty or inverted degree window [{lo}, {hi}]")]
    EmptyWindow { lo: i32, hi: i32 },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid filtration: {0}")]
    Filtration(String),
    #[error("invalid filtered module: {0}")]
    FilteredModule(String),
    #[error("pairing bracket: {0}")]
    Pairing(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("Koszul-Tate window not certified: {0}")]
    UncertifiedWindow(String),
    #[error("no preimage found at ghost order {order} within polynomial-degree cap {cap}")]
    PreimageNotFound { order: u32, cap: u32 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("certificate: {0}")]
    Certificate(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
