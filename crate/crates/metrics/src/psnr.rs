use lfd_core::Image;

use crate::sum::exact_sum;
use crate::{MetricsError, Result};

/// Sentinel for identical (or near-identical) images, keeping aggregate
/// means finite.
pub const PSNR_CAP_DB: f64 = 100.0;

/// Peak signal-to-noise ratio in dB over all pixels and channels jointly,
/// on unit dynamic range: `10 log10(1 / MSE)`, capped at 100 dB.
///
/// The squared-error mean is exactly rounded, so relocating pixels by any
/// permutation applied to both images leaves the value bit-identical.
pub fn psnr(a: &Image, b: &Image) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(MetricsError::DimMismatch {
            a: format!("{:?}", a.dim()),
            b: format!("{:?}", b.dim()),
        });
    }
    let n = a.len() as f64;
    let sq = a
        .iter()
        .zip(b.iter())
        .map(|(&x, &y)| (x - y) * (x - y));
    let mse = exact_sum(sq) / n;
    if mse == 0.0 {
        return Ok(PSNR_CAP_DB);
    }
    Ok((10.0 * (1.0 / mse).log10()).min(PSNR_CAP_DB))
}
