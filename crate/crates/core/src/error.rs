use thiserror::Error;

/// Errors produced by the set-system, graph, tree and representation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent caller input (bad index, unknown taxon, duplicate member...).
    #[error("input error: {0}")]
    Input(String),

    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A uniform-size measure was applied to a member of the wrong size.
    #[error("member {member} has size {found}, expected every member to have size {expected}")]
    UniformSize {
        member: usize,
        expected: usize,
        found: usize,
    },

    /// A member is smaller than the measure allows.
    #[error("member {member} has size {found}, but sizes of at least {minimum} are required")]
    MemberTooSmall {
        member: usize,
        minimum: usize,
        found: usize,
    },

    /// An exhaustive or brute-force routine would exceed its configured budget.
    #[error("{what}: {requested} exceeds the limit of {limit}; {hint}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
        hint: &'static str,
    },

    /// The input violates a precondition of the requested construction.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A construction that is guaranteed to succeed failed its own verification.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }
}
