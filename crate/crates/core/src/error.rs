use thiserror::Error;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("parameter error: {0}")]
    Param(String),

    #[error("input matrix must be 2x2 (got {rows}x{cols})")]
    NotTwoByTwo { rows: usize, cols: usize },

    #[error("input matrix must be numerical (it depends on parameter `{0}`)")]
    ParametricInput(String),

    #[error("base game must be numerical for a parametrised extension class (it depends on `{0}`)")]
    ParametricBase(String),

    #[error("class parameter {0} lies outside [0, 1]")]
    ParamOutOfRange(String),

    #[error("extension class {class} {reason}")]
    ClassMismatch { class: &'static str, reason: &'static str },

    #[error("angle out of range: {0}")]
    AngleOutOfRange(String),

    #[error("EWL weights are irrational for these angles; use the floating-point evaluation")]
    InexactWeights,

    #[error("game has no parameter to sweep")]
    NoParameter,

    #[error("payoff difference of degree {0} exceeds the exact sweep limit of 2")]
    DegreeTooHigh(usize),

    #[error("empty sweep domain: min {lo} must be below max {hi}")]
    EmptyDomain { lo: String, hi: String },

    #[error("profile ({row}, {col}) outside a {rows}x{cols} game")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error(
        "no report: the input matrix needs to be either numerical or 2x2, otherwise no report is created"
    )]
    NoReport,

    #[error("invalid report name `{0}` (allowed: letters, digits, `_` and `-`)")]
    InvalidName(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Machine-readable error catalog shared by the CLI and the HTTP service.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    InputNotNumeric,
    SizeNot2x2,
    ParseError,
    ParamError,
    Internal,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::InputNotNumeric => "INPUT_NOT_NUMERIC",
            ErrorCode::SizeNot2x2 => "SIZE_NOT_2X2",
            ErrorCode::ParseError => "PARSE_ERROR",
            ErrorCode::ParamError => "PARAM_ERROR",
            ErrorCode::Internal => "INTERNAL",
        }
    }
}

impl Error {
    pub fn code(&self) -> ErrorCode {
        match self {
            Error::Parse(_) | Error::Shape(_) => ErrorCode::ParseError,
            Error::NotTwoByTwo { .. } => ErrorCode::SizeNot2x2,
            Error::ParametricInput(_) | Error::ParametricBase(_) | Error::NoReport => {
                ErrorCode::InputNotNumeric
            }
            Error::Param(_)
            | Error::ParamOutOfRange(_)
            | Error::ClassMismatch { .. }
            | Error::AngleOutOfRange(_)
            | Error::InexactWeights
            | Error::NoParameter
            | Error::DegreeTooHigh(_)
            | Error::EmptyDomain { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidName(_) => ErrorCode::ParamError,
            Error::Io(_) => ErrorCode::Internal,
        }
    }

    /// True for errors caused by the caller's input rather than the engine.
    pub fn is_validation(&self) -> bool {
        self.code() != ErrorCode::Internal
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
