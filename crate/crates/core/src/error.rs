use thiserror::Error;

/// Errors raised while constructing or analysing measurement families.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("not a density operator: {0}")]
    NotDensity(String),

    #[error("rank {rank} out of range 1..={dim}")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error("empty operator list")]
    EmptyList,

    #[error("line sizes do not match the operator space: {0}")]
    SizeMismatch(String),

    #[error("operator is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("line {0} contains a zero operator")]
    DegenerateLine(usize),

    #[error("eta = {eta} outside admissible range [{low}, 1) for M = {m}")]
    EtaOutOfRange { eta: f64, low: f64, m: usize },

    #[error("b = {b} outside admissible range ({low}, {high}]")]
    BOutOfRange { b: f64, low: f64, high: f64 },

    #[error("invalid weights: {0}")]
    WeightError(String),

    #[error("R = {r} outside admissible range (0, {max}]")]
    ROutOfRange { r: f64, max: f64 },

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("dual frame is degenerate on line {0}")]
    DegenerateFrame(usize),

    #[error("a^2(b - c) is not constant across lines (spread {0:e})")]
    NotConstantS(f64),

    #[error("purity {purity} outside [{low}, 1]")]
    PurityOutOfRange { purity: f64, low: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable short name used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::DimensionTooSmall(_) => "DimensionTooSmall",
            Error::NotHermitian(_) => "NotHermitian",
            Error::NotDensity(_) => "NotDensity",
            Error::RankOutOfRange { .. } => "RankOutOfRange",
            Error::EmptyList => "EmptyList",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::NotPositive(_) => "NotPositive",
            Error::DegenerateLine(_) => "DegenerateLine",
            Error::EtaOutOfRange { .. } => "EtaOutOfRange",
            Error::BOutOfRange { .. } => "BOutOfRange",
            Error::WeightError(_) => "WeightError",
            Error::ROutOfRange { .. } => "ROutOfRange",
            Error::NotPrime(_) => "NotPrime",
            Error::DegenerateFrame(_) => "DegenerateFrame",
            Error::NotConstantS(_) => "NotConstantS",
            Error::PurityOutOfRange { .. } => "PurityOutOfRange",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
