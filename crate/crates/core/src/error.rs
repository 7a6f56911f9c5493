use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A denominator vanished (or a group element was not invertible).
    #[error("singular evaluation: {which} vanished")]
    Singular { which: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("overflow at index {at}")]
    Overflow { at: usize },
    /// An iterate landed exactly on a critical point of the map.
    #[error("degenerate orbit: derivative vanished at iterate {at}")]
    DegenerateOrbit { at: usize },
}

impl Error {
    pub(crate) fn singular(which: impl Into<String>) -> Self {
        Error::Singular {
            which: which.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParam(msg.into())
    }
}
