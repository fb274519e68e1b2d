use std::path::{Path, PathBuf};

use lfd_core::LightField;
use lfd_danet::{init_params, load_params, save_params, NetConfig, NetParams};
use lfd_degrade::mix64;
use lfd_pipeline::{load_scene, SceneManifest};

use crate::args::{InitKind, ParamsOpts};
use crate::errors::{CliError, Result};

/// Scene directories under `root`, sorted by name.
/// A scene directory is any direct child holding a meta.json.
pub fn list_scene_dirs(root: &Path) -> Result<Vec<(String, PathBuf)>> {
    let entries = std::fs::read_dir(root)
        .map_err(|e| CliError::io(format!("scene root {}: {e}", root.display())))?;
    let mut scenes = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::io(format!("scene root {}: {e}", root.display())))?;
        let path = entry.path();
        if path.is_dir() && path.join("meta.json").is_file() {
            let name = entry.file_name().to_string_lossy().into_owned();
            scenes.push((name, path));
        }
    }
    if scenes.is_empty() {
        return Err(CliError::io(format!("no scene directories under {}", root.display())));
    }
    scenes.sort();
    Ok(scenes)
}

pub fn load_scenes(root: &Path) -> Result<Vec<(String, LightField)>> {
    let mut out = Vec::new();
    for (name, path) in list_scene_dirs(root)? {
        let manifest = SceneManifest::read(&path)?;
        let lf = load_scene(&manifest)?;
        out.push((name, lf));
    }
    Ok(out)
}

/// Per-scene seed derived from the master seed and the scene name, so scenes
/// draw independent noise while a fixed --seed reproduces every byte.
pub fn scene_seed(master: u64, name: &str) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in name.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    mix64(master ^ mix64(h))
}

/// Parameter source: a container file, or a seeded initialization.
/// The resolved tensors are checked against the active config either way.
pub fn resolve_params(opts: &ParamsOpts, seed: u64, cfg: &NetConfig) -> Result<NetParams> {
    let params = match (&opts.params, opts.init_params) {
        (Some(path), _) => {
            let p = load_params(path)?;
            p.validate_against(cfg)?;
            p
        }
        (None, Some(InitKind::Zeros)) => NetParams::zeros(cfg)?,
        (None, Some(InitKind::Uniform)) => init_params(seed, cfg)?,
        (None, None) => {
            return Err(CliError::invalid("need --params FILE or --init-params zeros|uniform"))
        }
    };
    if let Some(path) = &opts.save_params {
        save_params(&params, path)?;
    }
    Ok(params)
}
