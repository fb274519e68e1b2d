use std::fmt;

use lfd_core::CoreError;
use lfd_danet::DanetError;
use lfd_degrade::DegradeError;
use lfd_metrics::MetricsError;
use lfd_pipeline::PipelineError;

/// Exit code for environment and I/O failures.
pub const EXIT_IO: i32 = 2;
/// Exit code for invalid arguments and configuration.
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    code: i32,
    msg: String,
}

impl CliError {
    pub fn io(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_IO, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_INVALID, msg: msg.into() }
    }

    pub fn code(&self) -> i32 {
        self.code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl std::error::Error for CliError {}

impl From<DegradeError> for CliError {
    fn from(e: DegradeError) -> Self {
        // Every degradation error is a rejected parameter combination.
        CliError::invalid(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::io(e.to_string())
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        CliError::io(e.to_string())
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        let code = match &e {
            // Flag-derived rejections.
            PipelineError::BadPatchAlpha { .. } | PipelineError::BadAugCode { .. } => EXIT_INVALID,
            // Everything else reports on files and scene content.
            _ => EXIT_IO,
        };
        CliError { code, msg: e.to_string() }
    }
}

impl From<DanetError> for CliError {
    fn from(e: DanetError) -> Self {
        let code = match &e {
            DanetError::BadConfig { .. }
            | DanetError::BadChannels { .. }
            | DanetError::BadAngular { .. } => EXIT_INVALID,
            // File-content and environment failures, including shape drift
            // inside a loaded container.
            _ => EXIT_IO,
        };
        CliError { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::io(e.to_string())
    }
}

impl From<image::ImageError> for CliError {
    fn from(e: image::ImageError) -> Self {
        CliError::io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
