use lfd_core::Image;
use ndarray::Array2;

use crate::{MetricsError, Result};

const WINDOW: usize = 11;
const SIGMA: f64 = 1.5;
const C1: f64 = 0.01 * 0.01;
const C2: f64 = 0.03 * 0.03;

/// 11×11 Gaussian window, σ = 1.5, normalized to unit sum.
fn gaussian_window() -> Array2<f64> {
    let mut w = Array2::zeros((WINDOW, WINDOW));
    let c = (WINDOW / 2) as f64;
    let mut total = 0.0;
    for i in 0..WINDOW {
        for j in 0..WINDOW {
            let di = i as f64 - c;
            let dj = j as f64 - c;
            let g = (-(di * di + dj * dj) / (2.0 * SIGMA * SIGMA)).exp();
            w[[i, j]] = g;
            total += g;
        }
    }
    w.mapv_inplace(|g| g / total);
    w
}

/// Single-scale SSIM on unit dynamic range: Gaussian-weighted moments
/// over every fully interior 11×11 window, mean over window positions per
/// channel, then mean over channels.
pub fn ssim(a: &Image, b: &Image) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(MetricsError::DimMismatch {
            a: format!("{:?}", a.dim()),
            b: format!("{:?}", b.dim()),
        });
    }
    let (h, w, c) = a.dim();
    if h < WINDOW || w < WINDOW {
        return Err(MetricsError::TooSmall { h, w });
    }
    let win = gaussian_window();
    let (oh, ow) = (h - WINDOW + 1, w - WINDOW + 1);
    let mut channel_means = Vec::with_capacity(c);
    for ch in 0..c {
        let mut acc = 0.0;
        for y in 0..oh {
            for x in 0..ow {
                let mut mu1 = 0.0;
                let mut mu2 = 0.0;
                let mut m11 = 0.0;
                let mut m22 = 0.0;
                let mut m12 = 0.0;
                for i in 0..WINDOW {
                    for j in 0..WINDOW {
                        let g = win[[i, j]];
                        let p = a[[y + i, x + j, ch]];
                        let q = b[[y + i, x + j, ch]];
                        mu1 += g * p;
                        mu2 += g * q;
                        m11 += g * p * p;
                        m22 += g * q * q;
                        m12 += g * p * q;
                    }
                }
                let var1 = m11 - mu1 * mu1;
                let var2 = m22 - mu2 * mu2;
                let cov = m12 - mu1 * mu2;
                acc += ((2.0 * mu1 * mu2 + C1) * (2.0 * cov + C2))
                    / ((mu1 * mu1 + mu2 * mu2 + C1) * (var1 + var2 + C2));
            }
        }
        channel_means.push(acc / (oh * ow) as f64);
    }
    Ok(channel_means.iter().sum::<f64>() / c as f64)
}
