use thiserror::Error;

/// Errors raised by the algebra kernel and the identity checks.
///
/// Every variant except [`Error::Internal`] is a caller mistake and maps to a
/// usage error at the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible variable tables: [{left}] vs [{right}]")]
    IncompatibleVariables { left: String, right: String },

    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("zero denominator in rational function")]
    ZeroDenominator,

    #[error("coefficient {0} is not an integer")]
    NonIntegerCoefficient(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{identity}: parameters outside the domain: {reason}")]
    Domain { identity: String, reason: String },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn domain(identity: &str, reason: impl Into<String>) -> Self {
        Error::Domain {
            identity: identity.to_string(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by bad input rather than a broken invariant.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
