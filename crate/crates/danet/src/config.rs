use crate::{DanetError, Result};

/// Declared noise-level ceiling; the embedding normalizes noise by this.
pub const NOISE_MAX: f64 = 75.0;

/// Negative slope shared by every leaky rectifier in the network.
pub const LEAKY_SLOPE: f64 = 0.1;

/// Architecture hyperparameters.
///
/// The defaults reproduce the published LF-DAnet layout; shrunken variants
/// (fewer channels, groups, or blocks) are valid as long as the invariants
/// below hold, which keeps micro-instances cheap for gradient checks.
#[derive(Debug, Clone, PartialEq)]
pub struct NetConfig {
    /// Angular resolution; views form an `ang_res x ang_res` grid.
    pub ang_res: usize,
    /// Feature channels. Must be divisible by 4 (branch widths are `C/4`).
    pub channels: usize,
    /// Number of degradation-adaptive groups.
    pub n_groups: usize,
    /// Disentangling blocks per group.
    pub blocks_per_group: usize,
    /// Side length of the generated per-channel spatial kernels.
    pub da_kernel: usize,
    /// Fully connected widths of the kernel prior embedding, input to output.
    pub kpe_widths: Vec<usize>,
    /// Upsampling factor. The tail is built from two x2 shuffles, so only 4
    /// is accepted.
    pub alpha: u32,
    /// Hidden width of the kernel-generating branch.
    pub kgen_hidden: usize,
    /// Hidden width of the channel-attention branch.
    pub ca_hidden: usize,
}

impl Default for NetConfig {
    fn default() -> Self {
        Self {
            ang_res: 5,
            channels: 64,
            n_groups: 4,
            blocks_per_group: 4,
            da_kernel: 3,
            kpe_widths: vec![441, 256, 128, 64, 32, 15],
            alpha: 4,
            kgen_hidden: 64,
            ca_hidden: 64,
        }
    }
}

impl NetConfig {
    /// Length of the degradation representation: embedding output plus the
    /// normalized noise level.
    pub fn repr_len(&self) -> usize {
        *self.kpe_widths.last().expect("validated non-empty") + 1
    }

    /// Checks the structural invariants the rest of the crate relies on.
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: &str| {
            Err(DanetError::BadConfig {
                reason: reason.to_string(),
            })
        };
        if self.ang_res < 2 {
            return fail("ang_res must be at least 2");
        }
        if self.channels == 0 || self.channels % 4 != 0 {
            return fail("channels must be a positive multiple of 4");
        }
        if self.n_groups == 0 || self.blocks_per_group == 0 {
            return fail("n_groups and blocks_per_group must be positive");
        }
        if self.da_kernel % 2 == 0 || self.da_kernel == 0 {
            return fail("da_kernel must be odd");
        }
        if self.kpe_widths.len() < 2 {
            return fail("kpe_widths needs an input and an output width");
        }
        if self.kpe_widths.iter().any(|&w| w == 0) {
            return fail("kpe_widths must be positive");
        }
        if self.kgen_hidden == 0 || self.ca_hidden == 0 {
            return fail("hidden widths must be positive");
        }
        if self.alpha != 4 {
            return fail("alpha must be 4: the tail upsamples by two x2 stages");
        }
        Ok(())
    }
}
