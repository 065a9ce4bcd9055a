use thiserror::Error;

/// Errors produced by rule construction, the decision procedures and the
/// file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("state {state} is outside the alphabet of size {size}")]
    StateOutOfRange { state: u32, size: usize },

    #[error("input too short: length {len} is less than the neighborhood width {width}")]
    InputTooShort { len: usize, width: usize },

    #[error("alphabet mismatch: {left} symbols vs {right} symbols")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("sidedness mismatch")]
    SidednessMismatch,

    #[error("budget exceeded: {what} needs {required}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("budget exceeded: conjugacy search reached width {width} after {nodes} nodes, limit is {limit}")]
    SearchBudget { width: usize, nodes: u128, limit: u128 },

    #[error("state {0} is not quiescent")]
    NotQuiescent(u32),

    #[error("state {0} is not spreading")]
    NotSpreading(u32),

    #[error("rule does not act independently on tracks {0}")]
    NotAProduct(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("nilpotency index {n} is not certified: {reason}")]
    Uncertified { n: usize, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::SearchBudget { .. })
    }
}
