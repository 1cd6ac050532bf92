use thiserror::Error;

/// Errors raised when constructing or evaluating model quantities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// A parameter violates its invariant.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// An argument lies outside the domain of an operation.
    #[error("`{name}` = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: String,
    },
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

pub(crate) fn check(
    name: &'static str,
    value: f64,
    ok: bool,
    reason: &'static str,
) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParam {
            name,
            value,
            reason,
        })
    }
}
