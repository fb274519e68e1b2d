//! Dataset plumbing: scene directories of per-view PNGs, HR/LR patch
//! extraction with boundary cropping, the 48-way joint spatial-angular
//! augmentation group, and training-degradation sampling.

mod augment;
mod error;
mod manifest;
mod patchify;
mod sample;
mod scene_io;
mod store;

pub use augment::{augment, augment_lf, AugCode, AugParts};
pub use error::PipelineError;
pub use manifest::{DegradationRecord, SceneManifest};
pub use patchify::{
    central_views, patchify, PatchPair, CROP_HR, CROP_LR, MARGIN_HR, PATCH_HR, STRIDE,
};
pub use sample::DegradationSampler;
pub use scene_io::{load_scene, save_scene};
pub use store::{plan_augmentations, read_patch_store, write_patch_store, AugMode, StoredPatch};

pub type Result<T> = std::result::Result<T, PipelineError>;
