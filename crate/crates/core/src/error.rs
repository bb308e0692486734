use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative input to integer square root: {0}")]
    NegativeInput(String),

    #[error("interval endpoint is a root of the polynomial after shrinking: ({lo}, {hi}]")]
    EndpointIsRoot { lo: String, hi: String },

    #[error("polynomial is not squarefree (gcd with its derivative has degree {gcd_degree})")]
    NotSquarefree { gcd_degree: usize },

    #[error("empty or inverted interval: lo={lo}, hi={hi}")]
    EmptyInterval { lo: String, hi: String },

    #[error("width must be positive, got {0}")]
    NonPositiveWidth(String),

    #[error("polynomial has a nonzero odd-power coefficient at t^{0}")]
    OddTermPresent(usize),

    #[error("invalid seed (p={p}, q={q}): {reason}")]
    InvalidSeed {
        p: u64,
        q: u64,
        reason: &'static str,
    },

    #[error("hypothesis not met for (p={p}, q={q}): requires {requirement}")]
    HypothesisNotMet {
        p: u64,
        q: u64,
        requirement: &'static str,
    },

    #[error("shifted equation for {label} vanishes at the c-range endpoint c={c}")]
    ZeroAtEndpoint { label: String, c: String },

    #[error(
        "root {label} isolated in ({lo}, {hi}] is not inside its predicted interval {predicted}"
    )]
    ContainmentFailure {
        label: String,
        lo: String,
        hi: String,
        predicted: String,
    },

    #[error("unexpected root structure: {positive} positive and {negative} negative roots of the half polynomial")]
    UnexpectedRootStructure { positive: usize, negative: usize },

    #[error("interval is on the imaginary axis; integer points are only defined on the real axis")]
    ImaginaryAxis,

    #[error("t={t} is not a root of the reduced polynomial for (p={p}, q={q})")]
    NotARoot { p: u64, q: u64, t: String },

    #[error("degenerate denominator in the parametrization: {0}")]
    DegenerateDenominator(&'static str),

    #[error(
        "checkpoint config hash mismatch: checkpoint has {found}, current config is {expected}"
    )]
    CheckpointMismatch { expected: String, found: String },

    #[error("invalid search config: {0}")]
    InvalidConfig(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("malformed record: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
