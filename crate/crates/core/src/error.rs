use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violated a mathematical precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation has no meaning for the given prime above 2.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("insufficient precision: need {needed} bits of the 2-adic root, have {available}")]
    Precision { needed: u32, available: u32 },

    /// A search box would evaluate more tuples than the configured cap allows.
    #[error("search refused: box holds {estimate} tuples, cost cap is {cap}")]
    CostCap { estimate: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
