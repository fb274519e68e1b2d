use lfd_core::Image;
use ndarray::Array3;

use crate::rng::NoiseStream;
use crate::{DegradeError, Result};

/// Adds channel-independent white Gaussian noise with standard deviation
/// `noise_level / 255` on the unit intensity scale. Sample `(h, w, c)` is
/// stream counter `(h*W + w)*C + c`, so the result does not depend on
/// traversal order. Output is not clipped.
pub fn add_awgn(img: &Image, noise_level: f64, stream: &NoiseStream) -> Result<Image> {
    if !(noise_level >= 0.0) || !noise_level.is_finite() {
        return Err(DegradeError::InvalidNoise { got: noise_level });
    }
    if noise_level == 0.0 {
        return Ok(img.clone());
    }
    let sigma = noise_level / 255.0;
    let (_, w, c) = img.dim();
    let mut out = Array3::zeros(img.raw_dim());
    for ((y, x, ch), &v) in img.indexed_iter() {
        let counter = ((y * w + x) * c + ch) as u64;
        out[[y, x, ch]] = v + sigma * stream.normal(counter);
    }
    Ok(out)
}
