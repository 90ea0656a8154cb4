use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the function (δ ∉ (0,1), x < 2, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A sieve bound, enumeration cap or integer width was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A stated construction precondition does not hold; `condition` names the inequality.
    #[error("precondition `{condition}` fails: {detail}")]
    Precondition { condition: &'static str, detail: String },

    /// One of the three parameter conditions of the number-field-code bound fails.
    #[error("condition {number} fails: {detail}")]
    Condition { number: u8, detail: String },

    /// An enclosure straddles the integer or threshold it was compared against.
    #[error("indeterminate: {0}")]
    Indeterminate(String),

    /// A lattice point lies within enclosure width of the open box boundary.
    #[error("lattice point within enclosure width of the box boundary")]
    Boundary,

    #[error("shift search exhausted: {0}")]
    SearchExhausted(String),

    #[error("no feasible witness: {0}")]
    NoWitness(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}
