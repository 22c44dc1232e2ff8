//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A strategy profile references a medium outside `1..=J`.
    #[error("profile entry {position} selects medium {choice} but only {media} media exist")]
    InvalidProfile {
        position: usize,
        choice: usize,
        media: usize,
    },
    /// A seed index outside `0..K`.
    #[error("seed index {seed} out of range for {seeds} seeds")]
    SeedIndex { seed: usize, seeds: u64 },
    /// A medium index outside `0..J`.
    #[error("medium index {medium} out of range for {media} media")]
    MediumIndex { medium: usize, media: usize },
    /// A load vector that does not belong to the domain of the setting.
    #[error("load vector sums to {got}, expected K = {expected}")]
    LoadSum { expected: u64, got: u64 },
    /// A load vector of the wrong dimension.
    #[error("load vector has {got} components, expected J = {expected}")]
    LoadLen { expected: usize, got: usize },
    /// The operation decides ties and therefore refuses the float backend.
    #[error("operation `{op}` requires the exact backend")]
    ExactRequired { op: &'static str },
    /// The brute-force scan would visit more load vectors than allowed.
    #[error("domain holds {points} load vectors, over the enumeration budget {budget}")]
    EnumerationBudget { points: u128, budget: u128 },
    /// Support enumeration is exponential in the number of media.
    #[error("social optimum supports J <= {limit} media, got {media}")]
    TooManyMedia { media: usize, limit: usize },
    /// No integer vector satisfies the requested bound system.
    #[error("bound system is infeasible: {reason}")]
    InfeasibleBounds { reason: String },
    /// A setting violates a model invariant; `field` names the culprit.
    #[error("invalid setting: {field}: {message}")]
    InvalidSetting { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid_setting(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidSetting {
            field: field.into(),
            message: message.into(),
        }
    }
}
