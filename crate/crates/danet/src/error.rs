use std::path::PathBuf;

use thiserror::Error;

/// Errors produced while building, running, or (de)serializing the network.
#[derive(Debug, Error)]
pub enum DanetError {
    #[error("invalid config: {reason}")]
    BadConfig { reason: String },

    #[error("parameter `{name}` is missing")]
    MissingParam { name: String },

    #[error("parameter `{name}` has shape {got:?}, expected {expected:?}")]
    BadShape {
        name: String,
        expected: Vec<usize>,
        got: Vec<usize>,
    },

    #[error("parameter `{name}` contains a non-finite value")]
    NonFiniteParam { name: String },

    #[error("input has {got} channels, expected {expected}")]
    BadChannels { expected: usize, got: usize },

    #[error("angular size {got_u}x{got_v} does not match the configured {expected}x{expected}")]
    BadAngular {
        expected: usize,
        got_u: usize,
        got_v: usize,
    },

    #[error("params file declares version `{got}`, expected `{expected}`")]
    BadVersion { expected: String, got: String },

    #[error("params file is malformed: {reason}")]
    BadFile { reason: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("header serialization failed: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Core(#[from] lfd_core::CoreError),

    #[error(transparent)]
    Degrade(#[from] lfd_degrade::DegradeError),
}
