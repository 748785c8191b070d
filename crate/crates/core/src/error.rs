use std::fmt;

use thiserror::Error;

/// Progress counters reported when a Gröbner computation is aborted.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BudgetStats {
    pub reason: String,
    pub pairs_processed: u64,
    pub pairs_pending: u64,
    pub basis_size: usize,
    pub max_degree: u32,
    pub elapsed_ms: u64,
}

impl fmt::Display for BudgetStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} after {} pairs ({} pending, basis {}, degree {}, {} ms)",
            self.reason,
            self.pairs_processed,
            self.pairs_pending,
            self.basis_size,
            self.max_degree,
            self.elapsed_ms
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error("extension generator `z` used in a ring over the rationals")]
    WrongDomainConstant,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(BudgetStats),
    #[error("the ideal contains 1")]
    TrivialIdeal,
    #[error("ideal is not homogeneous")]
    NonHomogeneous,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("plan mismatch: {0}")]
    PlanMismatch(String),
    #[error("degeneration family expands to the zero polynomial")]
    ZeroFamily,
    #[error("unknown normal-form label `{0}`")]
    UnknownLabel(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::MalformedTerm(_) => "MalformedTerm",
            Error::WrongDomainConstant => "WrongDomainConstant",
            Error::RingMismatch => "RingMismatch",
            Error::NonSquare { .. } => "NonSquare",
            Error::InvalidRing(_) => "InvalidRing",
            Error::DivisionByZero => "DivisionByZero",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::TrivialIdeal => "TrivialIdeal",
            Error::NonHomogeneous => "NonHomogeneous",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::PlanMismatch(_) => "PlanMismatch",
            Error::ZeroFamily => "ZeroFamily",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::InvalidForm(_) => "InvalidForm",
            Error::Format(_) => "FormatError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
