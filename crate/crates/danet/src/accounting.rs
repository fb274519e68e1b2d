use crate::params::shape_table;
use crate::{NetConfig, Result};

/// Published full-scale reference figures used for comparison printouts:
/// parameter count and reported compute for a 5x5 field of 32x32 views.
pub const PUBLISHED_PARAMS: f64 = 3.80e6;
pub const PUBLISHED_FLOPS: f64 = 65.93e9;

/// Parameter totals per module group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub total: u64,
    pub by_module: Vec<(String, u64)>,
}

/// Multiply-accumulate totals per module group for one input size.
///
/// `macs` is the headline figure, matching the convention behind the
/// published number; `flops_doubled` is the two-operations-per-MAC
/// reading for anyone counting adds separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlopsReport {
    pub macs: u64,
    pub flops_doubled: u64,
    pub by_module: Vec<(String, u64)>,
}

fn module_of(name: &str) -> &'static str {
    if name.starts_with("kpe.") {
        "kpe"
    } else if name.contains(".dablock.") {
        "dablocks"
    } else if name.contains(".distg") {
        "distg_blocks"
    } else if name.starts_with("head.") {
        "head"
    } else {
        "tail"
    }
}

const MODULES: [&str; 5] = ["kpe", "dablocks", "distg_blocks", "head", "tail"];

fn tally(pairs: impl IntoIterator<Item = (&'static str, u64)>) -> (u64, Vec<(String, u64)>) {
    let mut by: Vec<(String, u64)> = MODULES.iter().map(|m| (m.to_string(), 0)).collect();
    let mut total = 0u64;
    for (module, n) in pairs {
        let slot = by
            .iter_mut()
            .find(|(m, _)| m == module)
            .expect("known module");
        slot.1 += n;
        total += n;
    }
    (total, by)
}

/// Exact parameter count from the shape table the initializer uses.
pub fn count_params(cfg: &NetConfig) -> Result<CountReport> {
    cfg.validate()?;
    let table = shape_table(cfg);
    let (total, by_module) = tally(table.iter().map(|(name, shape)| {
        let n: usize = shape.iter().product();
        (module_of(name), n as u64)
    }));
    Ok(CountReport { total, by_module })
}

/// Multiply-accumulate count of one forward pass on an `h x w` input
/// field with the configured view grid. Biases, activations, pixel
/// shuffles, and the bicubic skip contribute no MACs.
pub fn estimate_flops(cfg: &NetConfig, h: usize, w: usize) -> Result<FlopsReport> {
    cfg.validate()?;
    let a = cfg.ang_res as u64;
    let c = cfg.channels as u64;
    let c4 = c / 4;
    let k = cfg.da_kernel as u64;
    let repr = cfg.repr_len() as u64;
    let (h, w) = (h as u64, w as u64);
    let views = a * a;
    let plane = h * w;

    let mut parts: Vec<(&'static str, u64)> = Vec::new();

    let kpe: u64 = cfg
        .kpe_widths
        .windows(2)
        .map(|p| (p[0] * p[1]) as u64)
        .sum();
    parts.push(("kpe", kpe));

    let groups = cfg.n_groups as u64;
    let da_fc = cfg.kgen_hidden as u64 * repr
        + c * k * k * cfg.kgen_hidden as u64
        + cfg.ca_hidden as u64 * repr
        + c * cfg.ca_hidden as u64;
    let da_spatial = c * k * k * plane * views + c * c * plane * views;
    parts.push(("dablocks", groups * (da_fc + da_spatial)));

    let spa = 2 * c * c * 9 * plane * views;
    let ang = c4 * c * views * plane + (views * c4) * c4 * plane;
    // Both EPI branches: batch (spatial axis x A), output plane (1 x the
    // other spatial axis), so each costs A x plane times its kernel.
    let epi_one = c4 * c * a * plane * a + (a * c4) * c4 * plane * a;
    let fuse = c * (c + 3 * c4) * plane * views;
    let blocks = groups * cfg.blocks_per_group as u64;
    parts.push(("distg_blocks", blocks * (spa + ang + 2 * epi_one + fuse)));

    parts.push(("head", c * 3 * 9 * plane * views));

    let tail = 4 * c * c * 9 * plane * views
        + 4 * c * c * 9 * (4 * plane) * views
        + 3 * c * 9 * (16 * plane) * views;
    parts.push(("tail", tail));

    let (macs, by_module) = tally(parts);
    Ok(FlopsReport {
        macs,
        flops_doubled: 2 * macs,
        by_module,
    })
}
