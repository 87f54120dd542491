use alloc::string::String;

/// Errors raised by the computational core.
///
/// The variants line up with the CLI exit-code contract: argument and domain
/// problems are usage errors, `Resource` is a cap being hit, and
/// `Construction`/`Internal` point at a bug in hard-coded data or arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
