use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside an operation's documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Interval endpoints closer than the supported width floor.
    #[error("degenerate interval [{a}, {b}]: width must be at least {min}")]
    DegenerateInterval { a: f64, b: f64, min: f64 },

    /// An iterative scheme exhausted its budget before reaching tolerance.
    /// `achieved` is the error estimate at the point of giving up.
    #[error("tolerance not met: achieved {achieved:e}, requested {requested:e}")]
    ToleranceNotMet { achieved: f64, requested: f64 },

    /// Result exceeds the representable range of f64.
    #[error("overflow in {0}")]
    Overflow(&'static str),

    #[error("config error: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
