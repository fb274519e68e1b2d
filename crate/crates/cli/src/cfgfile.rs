use std::path::Path;

use lfd_danet::NetConfig;
use serde::Deserialize;

use crate::errors::{CliError, Result};

/// Optional overrides read from a TOML config file.
/// Absent keys keep the built-in defaults; command-line flags win over both.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub ang_res: Option<usize>,
    pub channels: Option<usize>,
    pub n_groups: Option<usize>,
    pub blocks_per_group: Option<usize>,
    pub da_kernel: Option<usize>,
    pub kpe_widths: Option<Vec<usize>>,
    pub alpha: Option<u32>,
    pub kgen_hidden: Option<usize>,
    pub ca_hidden: Option<usize>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::invalid(format!("config {}: {e}", path.display())))
    }

    pub fn apply(&self, cfg: &mut NetConfig) {
        if let Some(v) = self.ang_res {
            cfg.ang_res = v;
        }
        if let Some(v) = self.channels {
            cfg.channels = v;
        }
        if let Some(v) = self.n_groups {
            cfg.n_groups = v;
        }
        if let Some(v) = self.blocks_per_group {
            cfg.blocks_per_group = v;
        }
        if let Some(v) = self.da_kernel {
            cfg.da_kernel = v;
        }
        if let Some(v) = &self.kpe_widths {
            cfg.kpe_widths = v.clone();
        }
        if let Some(v) = self.alpha {
            cfg.alpha = v;
        }
        if let Some(v) = self.kgen_hidden {
            cfg.kgen_hidden = v;
        }
        if let Some(v) = self.ca_hidden {
            cfg.ca_hidden = v;
        }
    }
}

/// Resolved network config plus the thread request from the config file.
pub struct Resolved {
    pub net: NetConfig,
    pub file_threads: Option<usize>,
}

pub fn resolve_config(path: Option<&Path>) -> Result<Resolved> {
    let mut net = NetConfig::default();
    let mut file_threads = None;
    if let Some(p) = path {
        let fc = FileConfig::read(p)?;
        fc.apply(&mut net);
        file_threads = fc.threads;
    }
    net.validate().map_err(CliError::from)?;
    Ok(Resolved { net, file_threads })
}

/// Thread-count precedence: --threads flag, then config file, then the rayon
/// default; LFDANET_THREADS caps the outcome in every case.
pub fn effective_threads(flag: Option<usize>, file: Option<usize>) -> Result<Option<usize>> {
    let cap = match std::env::var("LFDANET_THREADS") {
        Ok(s) => Some(s.parse::<usize>().map_err(|_| {
            CliError::invalid(format!("LFDANET_THREADS must be a positive integer, got {s:?}"))
        })?),
        Err(_) => None,
    };
    if cap == Some(0) {
        return Err(CliError::invalid("LFDANET_THREADS must be a positive integer, got \"0\""));
    }
    let requested = flag.or(file);
    if requested == Some(0) {
        return Err(CliError::invalid("threads must be >= 1"));
    }
    Ok(match (requested, cap) {
        (Some(r), Some(c)) => Some(r.min(c)),
        (Some(r), None) => Some(r),
        (None, Some(c)) => Some(c),
        (None, None) => None,
    })
}

pub fn install_thread_pool(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::io(format!("thread pool: {e}")))?;
    }
    Ok(())
}
