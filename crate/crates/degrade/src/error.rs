use thiserror::Error;

#[derive(Debug, Error)]
pub enum DegradeError {
    #[error("sigma_b must be finite and >= 0, got {got}")]
    InvalidSigma { got: f64 },
    #[error("noise_level must be finite and >= 0, got {got}")]
    InvalidNoise { got: f64 },
    #[error("scale must be finite and > 0, got {got}")]
    InvalidScale { got: f64 },
    #[error("alpha must be >= 1")]
    ZeroAlpha,
    #[error("view size {h}x{w} is not divisible by alpha={alpha}")]
    NotDivisible { h: usize, w: usize, alpha: u32 },
    #[error(transparent)]
    Core(#[from] lfd_core::CoreError),
}
