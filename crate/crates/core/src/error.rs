use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field order {0}: only GF(2) and GF(3) are supported")]
    UnsupportedField(u32),

    #[error("resource limit exceeded: {what} is {value}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("{0}")]
    Domain(String),

    #[error("presentation is not simple: {0}")]
    Simplicity(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown catalog entry `{0}`")]
    Catalog(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    pub(crate) fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
        if value > cap {
            Err(Error::ResourceLimit { what, value, cap })
        } else {
            Ok(())
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
