use thiserror::Error;

/// Errors produced by the analysis library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The strategy is not defined for this start point (meet-in-the-middle needs x > 0).
    #[error("strategy {kind} is not applicable at ({x}, {y})")]
    Inapplicable { kind: String, x: f64, y: f64 },

    /// A closed form was evaluated outside the region where it holds.
    #[error("({x}, {y}) is outside the validity region of {what}")]
    Domain { what: &'static str, x: f64, y: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("trajectory never reaches the package: {0}")]
    NoDelivery(String),
}

pub type Result<T> = std::result::Result<T, Error>;
