use thiserror::Error;

/// Errors raised by the library. The CLI maps each kind to an exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid word character {0:?}: expected digits 0, 1, 2")]
    ParseWord(char),

    #[error("invalid root coefficients ({0}, {1})")]
    InvalidRoot(i64, i64),

    #[error("{x} is not below {w} in the Bruhat order")]
    NotBelow { x: String, w: String },

    #[error("{0} is spiral; this operation needs a non-spiral element")]
    Spiral(String),

    #[error("{0} is not spiral")]
    NotSpiral(String),

    #[error("the identity has no type")]
    IdentityHasNoType,

    #[error("alcoves {0} and {1} do not share an edge")]
    NotAdjacent(String, String),

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("({0}, {1}, {2}) is not a real root")]
    NotReal(i64, i64, i64),

    #[error("({0}, {1}, {2}) is not a positive root")]
    NotPositive(i64, i64, i64),

    #[error("setup hypothesis failed: {0}")]
    SetupHypothesis(&'static str),

    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
}

impl Error {
    /// True for malformed user input, as opposed to a violated precondition.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::ParseWord(_) | Error::InvalidRoot(..) | Error::NotReal(..))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
