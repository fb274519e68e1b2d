//! Light-field value types and the reshape machinery used by the rest of
//! the toolkit: sub-aperture views, the four branch layouts (spatial,
//! angular, two EPI), macro-pixel images, EPI slices and 1D/2D pixel
//! shuffling.
//!
//! All values are `f64` arrays with immutable value semantics; operations
//! are pure functions that copy rather than alias.

mod branch;
mod epi;
mod error;
mod lightfield;
mod macpi;
mod shuffle;

pub use branch::{branch_view, inverse_branch_view, Branch, BranchView};
pub use epi::{extract_epi_h, extract_epi_v};
pub use error::CoreError;
pub use lightfield::{Image, LfDims, LightField};
pub use macpi::{from_macpi, to_macpi};
pub use shuffle::{
    pixel_shuffle_1d, pixel_shuffle_2d, pixel_unshuffle_1d, pixel_unshuffle_2d, ShuffleAxis,
};

pub type Result<T> = std::result::Result<T, CoreError>;
