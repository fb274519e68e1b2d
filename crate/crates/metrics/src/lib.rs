//! Reconstruction fidelity metrics: joint-RGB PSNR, single-scale SSIM,
//! and the three-level dataset protocol (view, then scene, then dataset
//! mean of scene means).
//!
//! PSNR's mean squared error uses exactly rounded summation, so any
//! permutation of pixels applied to both images leaves the score
//! bit-identical.

mod error;
mod psnr;
mod report;
mod ssim;
mod sum;

pub use error::MetricsError;
pub use psnr::{psnr, PSNR_CAP_DB};
pub use report::{dataset_score, MetricReport, SceneScore, ViewScore};
pub use ssim::ssim;
pub use sum::exact_sum;

pub type Result<T> = std::result::Result<T, MetricsError>;
