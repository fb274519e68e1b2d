use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("scene is missing view ({u}, {v}): {path}")]
    MissingView { u: usize, v: usize, path: PathBuf },
    #[error("view ({u}, {v}) is {got_h}x{got_w}, manifest says {h}x{w}")]
    ViewDimMismatch {
        u: usize,
        v: usize,
        got_h: usize,
        got_w: usize,
        h: usize,
        w: usize,
    },
    #[error("view ({u}, {v}) is not 8-bit RGB: {path}")]
    NotRgb8 { u: usize, v: usize, path: PathBuf },
    #[error("scene {h}x{w} is smaller than the {need}x{need} patch window")]
    SceneTooSmall { h: usize, w: usize, need: usize },
    #[error("alpha={alpha} does not divide the patch geometry")]
    BadPatchAlpha { alpha: u32 },
    #[error("rot90 needs square spatial and angular extents, got {h}x{w} views on a {u}x{v} grid")]
    NotSquare {
        u: usize,
        v: usize,
        h: usize,
        w: usize,
    },
    #[error("augmentation code {code} is outside [0, 48)")]
    BadAugCode { code: u8 },
    #[error("cannot keep {keep} of {have} views: need a centered sub-grid")]
    BadCentralCrop { keep: usize, have: usize },
    #[error("patch store index is inconsistent: {reason}")]
    BadStore { reason: String },
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("failed to decode image {path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error(transparent)]
    Core(#[from] lfd_core::CoreError),
    #[error(transparent)]
    Degrade(#[from] lfd_degrade::DegradeError),
}
