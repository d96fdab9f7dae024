use thiserror::Error;

/// Errors produced by the core library.
///
/// The variants split into two families that callers (notably the CLI) treat
/// differently: input problems (`Dimension`, `NotHermitian`, `InvalidState`,
/// `Domain`, `Capability`, `NotASymmetry`) and numerical breakdowns
/// (`Numerical`).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("not a symmetry of the generator: {0}")]
    NotASymmetry(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
