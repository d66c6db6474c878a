use thiserror::Error;

/// Errors shared across the crate.
///
/// Every operation is exact, so errors signal contract violations
/// (bad input, mixed backends, out-of-scale requests), never rounding.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("invalid place: {0}")]
    InvalidPlace(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("rank-deficient matrix: {0}")]
    RankDeficient(String),

    #[error("matrix is not alternating: {0}")]
    NotAlternating(String),

    #[error("symplectic space is not regular")]
    NotRegular,

    #[error("no disconnected pair in working set {working_set:?}: its vertices form a complete subgraph")]
    CliqueViolation { working_set: Vec<usize> },

    #[error("Siegel certification failed after {attempts} rounds: {detail}")]
    CertificationFailure { attempts: usize, detail: String },

    #[error("full space has no complementary equation matrix")]
    NoComplement,

    #[error("input exceeds supported scale: {0}")]
    Scale(String),

    #[error("unsupported automorphism for this backend: {0}")]
    UnsupportedAutomorphism(String),

    #[error("instance generation failed after {0} resamples")]
    GenerationFailed(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
