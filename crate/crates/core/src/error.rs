//! Crate-wide error type.

/// Errors reported by sequence parsing, the test battery, and campaign setup.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside an operation's mathematical domain.
    #[error("domain: {0}")]
    Domain(String),
    /// A character other than `0`, `1`, or whitespace in ASCII bit input.
    /// `offset` is the byte position of the offending character.
    #[error("invalid character {found:?} at byte {offset}")]
    BadChar { offset: usize, found: char },
    /// A sequence is too short (or too long) for the requested operation.
    #[error("length: {0}")]
    Length(String),
    /// A malformed or inconsistent configuration value.
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Prepends a location note (such as which sequence of a campaign
    /// failed) to the message, keeping the variant.
    pub fn with_context(self, note: impl AsRef<str>) -> Self {
        let note = note.as_ref();
        match self {
            Error::Domain(m) => Error::Domain(format!("{note}: {m}")),
            Error::BadChar { offset, found } => {
                Error::Domain(format!("{note}: invalid character {found:?} at byte {offset}"))
            }
            Error::Length(m) => Error::Length(format!("{note}: {m}")),
            Error::Config(m) => Error::Config(format!("{note}: {m}")),
            Error::Io(e) => Error::Io(std::io::Error::new(e.kind(), format!("{note}: {e}"))),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn length(msg: impl Into<String>) -> Self {
        Error::Length(msg.into())
    }
}
