use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{what} = {value} exceeds the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("constant polynomial has no irreducibility status")]
    ConstantInput,

    #[error("bad reduction: discriminant vanishes modulo {prime}")]
    BadReduction { prime: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("precision exhausted after {0} coefficients")]
    PrecisionExhausted(u64),
}

impl Error {
    pub(crate) fn bound(
        what: &'static str,
        value: impl Into<u128>,
        limit: impl Into<u128>,
    ) -> Self {
        Error::BoundExceeded {
            what,
            value: value.into(),
            limit: limit.into(),
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True for errors caused by size limits rather than bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::BoundExceeded { .. } | Error::PrecisionExhausted(_)
        )
    }
}
