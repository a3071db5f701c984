use thiserror::Error;

/// Errors raised by the modelling pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GreyError {
    #[error("InvalidOrder: fractional order must be finite and > 0, got {0}")]
    InvalidOrder(String),

    #[error("TooFewSamples: at least {needed} samples required, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error(
        "SingularDesign: normal equations are numerically singular (relative pivot {pivot:e})"
    )]
    SingularDesign { pivot: f64 },

    #[error("DevelopmentCoefficientOutOfRange: |a| must be < 2 for the optimized transform, got a = {0}")]
    DevelopmentCoefficientOutOfRange(f64),

    #[error("ZeroDevelopmentCoefficient: development coefficient a is zero")]
    ZeroDevelopmentCoefficient,

    #[error("VariantOrderConflict: {variant} is defined at r = 1, got r = {r}")]
    VariantOrderConflict { variant: &'static str, r: f64 },

    #[error("ZeroObserved: observed value at position {index} is zero")]
    ZeroObserved { index: usize },

    #[error("LengthMismatch: observed has {observed} values, predicted has {predicted}")]
    LengthMismatch { observed: usize, predicted: usize },

    #[error("NoFeasibleOrder: every candidate order failed to fit")]
    NoFeasibleOrder,

    #[error("NonFinite: {0}")]
    NonFinite(String),

    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, GreyError>;
