//! Reference implementation of the LF-DAnet forward pass in double
//! precision: kernel prior embedding, degradation-adaptive blocks
//! (forward and analytic backward), disentangling blocks, deterministic
//! initialization, serialization, and cost accounting.
//!
//! Everything is written for verifiability over speed: plain convolution
//! loops, explicit reshapes through the light-field branch views, and
//! counter-based initialization so any two runs agree bitwise.

mod accounting;
mod config;
mod dablock;
mod distg;
mod error;
mod kernels_dump;
mod kpe;
mod net;
mod ops;
mod params;

pub use accounting::{
    count_params, estimate_flops, CountReport, FlopsReport, PUBLISHED_FLOPS, PUBLISHED_PARAMS,
};
pub use config::NetConfig;
pub use dablock::{da_block_backward, da_block_forward, DaBlockGrads};
pub use distg::distg_block_forward;
pub use error::DanetError;
pub use kernels_dump::dump_da_kernels;
pub use kpe::kpe_forward;
pub use net::network_forward;
pub use params::{init_params, load_params, save_params, NetParams, PARAMS_FORMAT_VERSION};

pub type Result<T> = std::result::Result<T, DanetError>;
