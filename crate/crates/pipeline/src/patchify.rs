use lfd_core::LightField;
use lfd_degrade::{degrade_lf, mix64, Degradation};
use ndarray::s;

use crate::{PipelineError, Result};

/// HR sliding-window side length.
pub const PATCH_HR: usize = 152;
/// Sliding-window stride over the HR views.
pub const STRIDE: usize = 32;
/// Retained central HR patch side length.
pub const CROP_HR: usize = 128;
/// Retained central LR patch side length at alpha = 4.
pub const CROP_LR: usize = 32;
/// Crop offset on the HR side: (152 - 128) / 2.
pub const MARGIN_HR: usize = (PATCH_HR - CROP_HR) / 2;

/// An aligned HR/LR training pair. HR views are `CROP_HR` square, LR
/// views are `CROP_HR / alpha` square; `y0, x0` locate the original
/// 152-window inside the source views.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchPair {
    pub scene: String,
    pub y0: usize,
    pub x0: usize,
    pub hr: LightField,
    pub lr: LightField,
    pub degradation: Degradation,
    /// Seed handed to `degrade_lf` for this patch's noise streams.
    pub seed: u64,
}

/// Slides 152-windows with stride 32 jointly over all views, degrades
/// each window, and keeps the central 128 (HR) and 128/alpha (LR) crops
/// so kernel boundary effects never reach the pair. Each window gets its
/// own noise seed derived from `seed` and the window's grid position.
pub fn patchify(
    scene: &str,
    hr: &LightField,
    d: &Degradation,
    seed: u64,
) -> Result<Vec<PatchPair>> {
    let dims = hr.dims();
    if dims.h < PATCH_HR || dims.w < PATCH_HR {
        return Err(PipelineError::SceneTooSmall {
            h: dims.h,
            w: dims.w,
            need: PATCH_HR,
        });
    }
    let alpha = d.alpha as usize;
    if alpha == 0 || PATCH_HR % alpha != 0 || MARGIN_HR % alpha != 0 {
        return Err(PipelineError::BadPatchAlpha { alpha: d.alpha });
    }
    let margin_lr = MARGIN_HR / alpha;
    let crop_lr = CROP_HR / alpha;

    let ny = (dims.h - PATCH_HR) / STRIDE + 1;
    let nx = (dims.w - PATCH_HR) / STRIDE + 1;
    let mut pairs = Vec::with_capacity(ny * nx);
    for iy in 0..ny {
        for ix in 0..nx {
            let (y0, x0) = (iy * STRIDE, ix * STRIDE);
            let window = LightField::new(
                hr.data()
                    .slice(s![.., .., y0..y0 + PATCH_HR, x0..x0 + PATCH_HR, ..])
                    .to_owned(),
            )?;
            let patch_seed = mix64(seed ^ mix64(((iy as u64 + 1) << 32) | (ix as u64 + 1)));
            let lr_full = degrade_lf(&window, d, patch_seed)?;
            let hr_crop = LightField::new(
                window
                    .data()
                    .slice(s![
                        ..,
                        ..,
                        MARGIN_HR..MARGIN_HR + CROP_HR,
                        MARGIN_HR..MARGIN_HR + CROP_HR,
                        ..
                    ])
                    .to_owned(),
            )?;
            let lr_crop = LightField::new(
                lr_full
                    .data()
                    .slice(s![
                        ..,
                        ..,
                        margin_lr..margin_lr + crop_lr,
                        margin_lr..margin_lr + crop_lr,
                        ..
                    ])
                    .to_owned(),
            )?;
            pairs.push(PatchPair {
                scene: scene.to_string(),
                y0,
                x0,
                hr: hr_crop,
                lr: lr_crop,
                degradation: *d,
                seed: patch_seed,
            });
        }
    }
    Ok(pairs)
}

/// Keeps the centered `keep_u` x `keep_v` view sub-grid.
pub fn central_views(lf: &LightField, keep_u: usize, keep_v: usize) -> Result<LightField> {
    let dims = lf.dims();
    for (keep, have) in [(keep_u, dims.u), (keep_v, dims.v)] {
        if keep == 0 || keep > have || (have - keep) % 2 != 0 {
            return Err(PipelineError::BadCentralCrop { keep, have });
        }
    }
    let off_u = (dims.u - keep_u) / 2;
    let off_v = (dims.v - keep_v) / 2;
    Ok(LightField::new(
        lf.data()
            .slice(s![
                off_u..off_u + keep_u,
                off_v..off_v + keep_v,
                ..,
                ..,
                ..
            ])
            .to_owned(),
    )?)
}
