use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::{PipelineError, Result};

/// Degradation applied to a stored scene, on the 0 to 255 noise scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegradationRecord {
    pub sigma_b: f64,
    pub noise_level: f64,
    pub alpha: u32,
    pub seed: u64,
}

impl From<&DegradationRecord> for lfd_degrade::Degradation {
    fn from(r: &DegradationRecord) -> Self {
        lfd_degrade::Degradation {
            sigma_b: r.sigma_b,
            noise_level: r.noise_level,
            alpha: r.alpha,
        }
    }
}

/// `meta.json` contents plus the directory the scene lives in. View files
/// are named `view_{u}_{v}.png` inside that directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneManifest {
    pub name: String,
    #[serde(rename = "U")]
    pub u: usize,
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "H")]
    pub h: usize,
    #[serde(rename = "W")]
    pub w: usize,
    pub degradation: Option<DegradationRecord>,
    #[serde(skip)]
    pub root: PathBuf,
}

impl SceneManifest {
    pub fn read(dir: &Path) -> Result<Self> {
        let path = dir.join("meta.json");
        let text = std::fs::read_to_string(&path).map_err(|source| PipelineError::Io {
            path: path.clone(),
            source,
        })?;
        let mut manifest: SceneManifest =
            serde_json::from_str(&text).map_err(|source| PipelineError::Json { path, source })?;
        manifest.root = dir.to_path_buf();
        Ok(manifest)
    }

    pub fn write(&self) -> Result<()> {
        let path = self.root.join("meta.json");
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(&path, text).map_err(|source| PipelineError::Io { path, source })
    }

    pub fn view_path(&self, u: usize, v: usize) -> PathBuf {
        self.root.join(format!("view_{u}_{v}.png"))
    }
}
