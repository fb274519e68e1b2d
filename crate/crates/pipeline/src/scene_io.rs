use std::path::Path;

use image::{DynamicImage, RgbImage};
use lfd_core::{Image, LightField};
use ndarray::Array3;

use crate::{DegradationRecord, PipelineError, Result, SceneManifest};

fn load_view(manifest: &SceneManifest, u: usize, v: usize) -> Result<Image> {
    let path = manifest.view_path(u, v);
    if !path.exists() {
        return Err(PipelineError::MissingView { u, v, path });
    }
    let decoded = image::open(&path).map_err(|source| PipelineError::Image {
        path: path.clone(),
        source,
    })?;
    let rgb = match decoded {
        DynamicImage::ImageRgb8(img) => img,
        _ => return Err(PipelineError::NotRgb8 { u, v, path }),
    };
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    if (h, w) != (manifest.h, manifest.w) {
        return Err(PipelineError::ViewDimMismatch {
            u,
            v,
            got_h: h,
            got_w: w,
            h: manifest.h,
            w: manifest.w,
        });
    }
    Ok(Array3::from_shape_fn((h, w, 3), |(y, x, c)| {
        rgb.get_pixel(x as u32, y as u32)[c] as f64 / 255.0
    }))
}

/// Loads every view of a manifest into a light field, values in [0, 1].
pub fn load_scene(manifest: &SceneManifest) -> Result<LightField> {
    let mut views = Vec::with_capacity(manifest.u * manifest.v);
    for u in 0..manifest.u {
        for v in 0..manifest.v {
            views.push(load_view(manifest, u, v)?);
        }
    }
    Ok(LightField::from_views(manifest.u, manifest.v, &views)?)
}

/// Writes a scene directory: one `view_{u}_{v}.png` per view (values
/// clipped then quantized by `round(v * 255)`) plus `meta.json`.
pub fn save_scene(
    lf: &LightField,
    name: &str,
    dir: &Path,
    degradation: Option<DegradationRecord>,
) -> Result<SceneManifest> {
    std::fs::create_dir_all(dir).map_err(|source| PipelineError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let dims = lf.dims();
    let manifest = SceneManifest {
        name: name.to_string(),
        u: dims.u,
        v: dims.v,
        h: dims.h,
        w: dims.w,
        degradation,
        root: dir.to_path_buf(),
    };
    for u in 0..dims.u {
        for v in 0..dims.v {
            let view = lf.view(u, v)?;
            let mut rgb = RgbImage::new(dims.w as u32, dims.h as u32);
            for y in 0..dims.h {
                for x in 0..dims.w {
                    let px = rgb.get_pixel_mut(x as u32, y as u32);
                    for c in 0..3 {
                        px[c] = (view[[y, x, c]].clamp(0.0, 1.0) * 255.0).round() as u8;
                    }
                }
            }
            let path = manifest.view_path(u, v);
            rgb.save(&path)
                .map_err(|source| PipelineError::Image { path, source })?;
        }
    }
    manifest.write()?;
    Ok(manifest)
}
