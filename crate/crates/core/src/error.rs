use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse multiplier `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("digit {0} is not a base-3 digit")]
    InvalidDigit(u8),

    #[error("multiplier must be positive")]
    ZeroMultiplier,

    #[error("family index k must be at least 1")]
    ZeroFamilyIndex,

    #[error("multiplier list is empty")]
    EmptyInput,

    #[error("value {0} does not fit the 64-bit carry arithmetic")]
    Overflow(String),

    #[error("{what} exceeds the configured limit of {limit}")]
    LimitExceeded { what: String, limit: usize },

    #[error("multiplier {0} has residue 2 mod 3; its Cantor intersection is {{0}}")]
    ResidueTwo(String),

    #[error("graph is not right-resolving: vertex {vertex} has two out-edges labeled {label}")]
    NotRightResolving { vertex: usize, label: u8 },

    #[error("graph is not essential: vertex {0} has no out-edge")]
    NotEssential(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("no bracketed root in [{lo}, {hi}]")]
    NoBracketedRoot { lo: f64, hi: f64 },

    #[error("power iteration did not reach tolerance {tol} after {iterations} steps (gap {gap})")]
    NotConverged {
        tol: f64,
        iterations: usize,
        gap: f64,
    },

    #[error("path set is empty")]
    EmptyPathSet,

    #[error("{0}")]
    OutOfRange(String),
}

impl Error {
    /// True for refusals caused by caps or overflow rather than bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::Overflow(_) | Error::LimitExceeded { .. } | Error::NotConverged { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
