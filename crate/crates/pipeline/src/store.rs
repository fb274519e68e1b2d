use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{
    augment, load_scene, save_scene, AugCode, DegradationRecord, PatchPair, PipelineError, Result,
    SceneManifest,
};

/// How training pairs are expanded into stored records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugMode {
    /// One sampled code per patch.
    SampleOne,
    /// All 48 codes per patch.
    MaterializeAll,
}

/// One `index.json` entry: the patch's provenance and the augmentation
/// already applied to its stored images.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredPatch {
    pub id: usize,
    pub scene: String,
    pub y0: usize,
    pub x0: usize,
    pub code: u8,
    pub degradation: DegradationRecord,
}

/// Expands patch indices into (patch, code) jobs. `SampleOne` draws the
/// code uniformly from the patch's own stream, so the plan is stable
/// under reordering.
pub fn plan_augmentations(n_patches: usize, mode: AugMode, seed: u64) -> Vec<(usize, AugCode)> {
    match mode {
        AugMode::MaterializeAll => (0..n_patches)
            .flat_map(|p| (0..AugCode::COUNT).map(move |c| (p, AugCode::new(c).unwrap())))
            .collect(),
        AugMode::SampleOne => {
            let stream = lfd_degrade::NoiseStream::new(seed, 0, 0);
            (0..n_patches)
                .map(|p| {
                    let draw = stream.unit_open(p as u64);
                    // unit_open is (0,1]: ceil-minus-one maps it onto 0..48.
                    let code = (draw * AugCode::COUNT as f64).ceil() as u8 - 1;
                    (p, AugCode::new(code).unwrap())
                })
                .collect()
        }
    }
}

/// Writes augmented pairs under `root`: per record a directory
/// `patch_{id}/` holding `hr/` and `lr/` scene layouts, plus a top-level
/// `index.json` array of [`StoredPatch`] entries.
pub fn write_patch_store(
    root: &Path,
    pairs: &[PatchPair],
    plan: &[(usize, AugCode)],
) -> Result<Vec<StoredPatch>> {
    std::fs::create_dir_all(root).map_err(|source| PipelineError::Io {
        path: root.to_path_buf(),
        source,
    })?;
    let mut index = Vec::with_capacity(plan.len());
    for (id, &(patch_idx, code)) in plan.iter().enumerate() {
        let pair = pairs.get(patch_idx).ok_or_else(|| PipelineError::BadStore {
            reason: format!("plan references patch {patch_idx} of {}", pairs.len()),
        })?;
        let augmented = augment(pair, code)?;
        let dir = root.join(format!("patch_{id:05}"));
        let record = DegradationRecord {
            sigma_b: pair.degradation.sigma_b,
            noise_level: pair.degradation.noise_level,
            alpha: pair.degradation.alpha,
            seed: pair.seed,
        };
        save_scene(&augmented.hr, &pair.scene, &dir.join("hr"), Some(record))?;
        save_scene(&augmented.lr, &pair.scene, &dir.join("lr"), Some(record))?;
        index.push(StoredPatch {
            id,
            scene: pair.scene.clone(),
            y0: pair.y0,
            x0: pair.x0,
            code: code.code(),
            degradation: record,
        });
    }
    let path = root.join("index.json");
    let text = serde_json::to_string_pretty(&index).expect("index serializes");
    std::fs::write(&path, text).map_err(|source| PipelineError::Io { path, source })?;
    Ok(index)
}

/// Reads a patch store back: index entries plus the stored (already
/// augmented, 8-bit quantized) HR/LR pairs.
pub fn read_patch_store(root: &Path) -> Result<Vec<(StoredPatch, PatchPair)>> {
    let path = root.join("index.json");
    let text = std::fs::read_to_string(&path).map_err(|source| PipelineError::Io {
        path: path.clone(),
        source,
    })?;
    let index: Vec<StoredPatch> =
        serde_json::from_str(&text).map_err(|source| PipelineError::Json { path, source })?;
    let mut out = Vec::with_capacity(index.len());
    for record in index {
        let dir = root.join(format!("patch_{:05}", record.id));
        let hr = load_scene(&SceneManifest::read(&dir.join("hr"))?)?;
        let lr = load_scene(&SceneManifest::read(&dir.join("lr"))?)?;
        let pair = PatchPair {
            scene: record.scene.clone(),
            y0: record.y0,
            x0: record.x0,
            hr,
            lr,
            degradation: lfd_degrade::Degradation {
                sigma_b: record.degradation.sigma_b,
                noise_level: record.degradation.noise_level,
                alpha: record.degradation.alpha,
            },
            seed: record.degradation.seed,
        };
        out.push((record, pair));
    }
    Ok(out)
}
