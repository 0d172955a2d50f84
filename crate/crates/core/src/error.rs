use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("input error: {0}")]
    Input(String),
    /// A path or product that does not compose in the quiver.
    #[error("composition error: {0}")]
    Composition(String),
    /// The truncated ideal closure did not stabilise below the cap.
    #[error("truncation cap exceeded: no certificate up to path length {cap}")]
    TruncationCap { cap: usize },
    /// A bounded search (live paths, isomorphism witnesses) ran out of budget.
    #[error("search cap exceeded: {0}")]
    SearchCap(String),
    /// A construction could not be completed on the given input.
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
