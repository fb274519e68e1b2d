use ndarray::Array2;

use crate::{DegradeError, Result};

/// Side length of every blur kernel.
pub const KERNEL_SIZE: usize = 21;

const CENTER: usize = KERNEL_SIZE / 2;

/// A normalized 21×21 isotropic Gaussian blur kernel.
///
/// Invariants: weights sum to 1 within 1e-12, are 4-fold symmetric about
/// the center tap, and collapse to a delta kernel at `sigma == 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel21 {
    weights: Array2<f64>,
    sigma: f64,
}

impl Kernel21 {
    pub fn weights(&self) -> &Array2<f64> {
        &self.weights
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// True exactly when blurring with this kernel is the identity.
    pub fn is_delta(&self) -> bool {
        self.sigma == 0.0
    }
}

/// Builds the centered 21×21 Gaussian `w(i,j) ∝ exp(−(i²+j²)/(2σ²))`,
/// normalized to unit sum. `sigma_b = 0` yields the delta kernel.
pub fn gaussian_kernel(sigma_b: f64) -> Result<Kernel21> {
    if !(sigma_b >= 0.0) || !sigma_b.is_finite() {
        return Err(DegradeError::InvalidSigma { got: sigma_b });
    }
    let mut weights = Array2::zeros((KERNEL_SIZE, KERNEL_SIZE));
    if sigma_b == 0.0 {
        weights[[CENTER, CENTER]] = 1.0;
        return Ok(Kernel21 {
            weights,
            sigma: sigma_b,
        });
    }
    let inv_two_sigma_sq = 1.0 / (2.0 * sigma_b * sigma_b);
    let mut total = 0.0;
    for i in 0..KERNEL_SIZE {
        for j in 0..KERNEL_SIZE {
            let di = i as f64 - CENTER as f64;
            let dj = j as f64 - CENTER as f64;
            let w = (-(di * di + dj * dj) * inv_two_sigma_sq).exp();
            weights[[i, j]] = w;
            total += w;
        }
    }
    weights.mapv_inplace(|w| w / total);
    Ok(Kernel21 {
        weights,
        sigma: sigma_b,
    })
}
