use thiserror::Error;

/// Errors raised while building or querying models.
///
/// Evaluation paths (membership degrees, window values, integration steps)
/// never fail; everything here is reported at construction time or by the
/// analysis helpers that need a minimum amount of data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid membership function: {0}")]
    Membership(String),
    #[error("invalid linguistic variable `{name}`: {reason}")]
    Variable { name: String, reason: String },
    #[error("invalid rule #{index}: {reason}")]
    Rule { index: usize, reason: String },
    #[error("invalid fuzzy system: {0}")]
    System(String),
    #[error("missing input `{0}`")]
    MissingInput(String),
    #[error("invalid window: {0}")]
    Window(String),
    #[error("invalid device parameters: {0}")]
    Device(String),
    #[error("invalid waveform: {0}")]
    Waveform(String),
    #[error("invalid circuit: {0}")]
    Circuit(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
