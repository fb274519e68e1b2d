//! The degradation engine: isotropic Gaussian blur, antialiased bicubic
//! resampling, and seeded channel-independent AWGN, composed per view.
//!
//! All stages are pure functions over `f64` images in `[0, 1]`. Noise is
//! drawn from counter-based per-view streams, so degrading views in
//! parallel is bit-identical to degrading them sequentially.

mod blur;
mod degrade;
mod error;
mod kernel;
mod noise;
mod resize;
mod rng;

pub use blur::blur;
pub use degrade::{clip_unit, degrade_lf, Degradation};
pub use error::DegradeError;
pub use kernel::{gaussian_kernel, Kernel21, KERNEL_SIZE};
pub use noise::add_awgn;
pub use resize::bicubic_resize;
pub use rng::{mix64, stream_key, NoiseStream};

pub type Result<T> = std::result::Result<T, DegradeError>;
