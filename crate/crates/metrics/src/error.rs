use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("image dims differ: {a} vs {b}")]
    DimMismatch { a: String, b: String },
    #[error("image {h}x{w} is smaller than the 11x11 window")]
    TooSmall { h: usize, w: usize },
    #[error("scene {name} present in ground truth but not in predictions")]
    MissingScene { name: String },
    #[error("empty scene list")]
    Empty,
    #[error(transparent)]
    Core(#[from] lfd_core::CoreError),
}
