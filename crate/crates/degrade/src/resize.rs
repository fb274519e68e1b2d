use lfd_core::Image;
use ndarray::Array3;

use crate::{DegradeError, Result};

/// Cubic convolution kernel with a = -0.5. Support (-2, 2), W(0) = 1.
fn cubic(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 1.0 {
        1.5 * ax * ax * ax - 2.5 * ax * ax + 1.0
    } else if ax < 2.0 {
        -0.5 * ax * ax * ax + 2.5 * ax * ax - 4.0 * ax + 2.0
    } else {
        0.0
    }
}

/// Per-output-pixel source taps along one axis. Indices are clamped to the
/// valid range (replicate borders); weights sum to 1.
struct AxisTaps {
    indices: Vec<usize>,
    weights: Vec<f64>,
    per_pixel: usize,
}

fn contributions(in_len: usize, out_len: usize, scale: f64, antialias: bool) -> AxisTaps {
    let aa = antialias && scale < 1.0;
    let kernel_width = if aa { 4.0 / scale } else { 4.0 };
    let per_pixel = kernel_width.ceil() as usize + 2;
    let mut indices = Vec::with_capacity(out_len * per_pixel);
    let mut weights = Vec::with_capacity(out_len * per_pixel);
    for o in 0..out_len {
        let u = (o as f64 + 0.5) / scale - 0.5;
        let left = (u - kernel_width / 2.0).floor() as isize;
        let start = weights.len();
        let mut sum = 0.0;
        for t in 0..per_pixel {
            let s = left + t as isize;
            let w = if aa {
                scale * cubic(scale * (u - s as f64))
            } else {
                cubic(u - s as f64)
            };
            sum += w;
            indices.push(s.clamp(0, in_len as isize - 1) as usize);
            weights.push(w);
        }
        for w in &mut weights[start..] {
            *w /= sum;
        }
    }
    AxisTaps {
        indices,
        weights,
        per_pixel,
    }
}

/// Resamples with the cubic convolution kernel, separably along width then
/// height. Output size is `ceil(len * scale)` per axis. When `antialias`
/// and `scale < 1`, taps use the dilated kernel `scale * W(scale * x)`
/// with support `4 / scale`; weights are renormalized per output pixel.
pub fn bicubic_resize(img: &Image, scale: f64, antialias: bool) -> Result<Image> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(DegradeError::InvalidScale { got: scale });
    }
    let (h, w, c) = img.dim();
    let out_h = (h as f64 * scale).ceil() as usize;
    let out_w = (w as f64 * scale).ceil() as usize;

    let taps_w = contributions(w, out_w, scale, antialias);
    let mut mid = Array3::zeros((h, out_w, c));
    for y in 0..h {
        for o in 0..out_w {
            let base = o * taps_w.per_pixel;
            for ch in 0..c {
                let mut acc = 0.0;
                for t in 0..taps_w.per_pixel {
                    acc += taps_w.weights[base + t] * img[[y, taps_w.indices[base + t], ch]];
                }
                mid[[y, o, ch]] = acc;
            }
        }
    }

    let taps_h = contributions(h, out_h, scale, antialias);
    let mut out = Array3::zeros((out_h, out_w, c));
    for o in 0..out_h {
        let base = o * taps_h.per_pixel;
        for x in 0..out_w {
            for ch in 0..c {
                let mut acc = 0.0;
                for t in 0..taps_h.per_pixel {
                    acc += taps_h.weights[base + t] * mid[[taps_h.indices[base + t], x, ch]];
                }
                out[[o, x, ch]] = acc;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array3;

    // Reference resampler, one axis, written against the sampling rule
    // alone: every tap inside an over-wide window, clamped and
    // renormalized per pixel. Horner-form kernel so it shares no
    // arithmetic with `cubic`.
    fn cubic_ref(x: f64) -> f64 {
        let ax = x.abs();
        if ax <= 1.0 {
            ((1.5 * ax - 2.5) * ax) * ax + 1.0
        } else if ax < 2.0 {
            ((-0.5 * ax + 2.5) * ax - 4.0) * ax + 2.0
        } else {
            0.0
        }
    }

    fn oracle_resize_1d(input: &[f64], scale: f64, antialias: bool) -> Vec<f64> {
        let n = input.len();
        let out_len = (n as f64 * scale).ceil() as usize;
        let aa = antialias && scale < 1.0;
        let half = if aa { 2.0 / scale } else { 2.0 };
        let mut out = Vec::with_capacity(out_len);
        for o in 0..out_len {
            let u = (o as f64 + 0.5) / scale - 0.5;
            let lo = (u - half).floor() as isize - 1;
            let hi = (u + half).ceil() as isize + 1;
            let mut num = 0.0;
            let mut den = 0.0;
            for s in lo..=hi {
                let w = if aa {
                    scale * cubic_ref(scale * (u - s as f64))
                } else {
                    cubic_ref(u - s as f64)
                };
                den += w;
                num += w * input[s.clamp(0, n as isize - 1) as usize];
            }
            out.push(num / den);
        }
        out
    }

    fn row_image(values: &[f64]) -> Image {
        Array3::from_shape_vec((1, values.len(), 1), values.to_vec()).unwrap()
    }

    fn column_image(values: &[f64]) -> Image {
        Array3::from_shape_vec((values.len(), 1, 1), values.to_vec()).unwrap()
    }

    #[test]
    fn scale_one_is_identity() {
        let img = Array3::from_shape_fn((7, 9, 3), |(y, x, c)| {
            ((y * 31 + x * 7 + c) % 13) as f64 / 13.0
        });
        let out = bicubic_resize(&img, 1.0, true).unwrap();
        assert_eq!(out, img);
    }

    #[test]
    fn constants_are_fixed_points() {
        let img = Array3::from_elem((12, 16, 3), 0.6);
        for (scale, aa) in [(0.25, true), (0.5, true), (2.0, false), (4.0, false)] {
            let out = bicubic_resize(&img, scale, aa).unwrap();
            for &v in out.iter() {
                assert!((v - 0.6).abs() <= 1e-12, "scale={scale}");
            }
        }
    }

    #[test]
    fn output_sizes_are_ceil() {
        let img = Array3::zeros((7, 152, 1));
        assert_eq!(bicubic_resize(&img, 0.5, true).unwrap().dim(), (4, 76, 1));
        assert_eq!(bicubic_resize(&img, 0.25, true).unwrap().dim(), (2, 38, 1));
        let img = Array3::zeros((32, 5, 1));
        assert_eq!(bicubic_resize(&img, 4.0, false).unwrap().dim(), (128, 20, 1));
    }

    #[test]
    fn ramp_downscale_matches_oracle() {
        let ramp: Vec<f64> = (0..8).map(|i| i as f64).collect();
        let expect = oracle_resize_1d(&ramp, 0.5, true);
        let out = bicubic_resize(&row_image(&ramp), 0.5, true).unwrap();
        assert_eq!(out.dim(), (1, 4, 1));
        for o in 0..4 {
            assert!(
                (out[[0, o, 0]] - expect[o]).abs() <= 1e-12,
                "o={o} got={} want={}",
                out[[0, o, 0]],
                expect[o]
            );
        }
    }

    #[test]
    fn both_axes_match_oracle_across_scales() {
        let values: Vec<f64> = (0..12).map(|i| 0.5 + 0.5 * (i as f64 * 0.7).sin()).collect();
        for (scale, aa) in [(0.25, true), (0.5, true), (0.5, false), (2.0, false), (4.0, true)] {
            let expect = oracle_resize_1d(&values, scale, aa);
            let row = bicubic_resize(&row_image(&values), scale, aa).unwrap();
            let col = bicubic_resize(&column_image(&values), scale, aa).unwrap();
            for (o, &e) in expect.iter().enumerate() {
                assert!((row[[0, o, 0]] - e).abs() <= 1e-12, "row scale={scale} o={o}");
                assert!((col[[o, 0, 0]] - e).abs() <= 1e-12, "col scale={scale} o={o}");
            }
        }
    }

    #[test]
    fn two_d_is_width_pass_then_height_pass() {
        let img = Array3::from_shape_fn((6, 8, 2), |(y, x, c)| {
            0.5 + 0.3 * ((y * 17 + x * 5 + c * 3) as f64 * 0.41).cos()
        });
        let scale = 0.5;
        let (h, w, c) = img.dim();
        let out_w = (w as f64 * scale).ceil() as usize;
        let out_h = (h as f64 * scale).ceil() as usize;
        let mut mid = Array3::zeros((h, out_w, c));
        for y in 0..h {
            for ch in 0..c {
                let row: Vec<f64> = (0..w).map(|x| img[[y, x, ch]]).collect();
                for (o, v) in oracle_resize_1d(&row, scale, true).into_iter().enumerate() {
                    mid[[y, o, ch]] = v;
                }
            }
        }
        let mut expect = Array3::zeros((out_h, out_w, c));
        for x in 0..out_w {
            for ch in 0..c {
                let col: Vec<f64> = (0..h).map(|y| mid[[y, x, ch]]).collect();
                for (o, v) in oracle_resize_1d(&col, scale, true).into_iter().enumerate() {
                    expect[[o, x, ch]] = v;
                }
            }
        }
        let out = bicubic_resize(&img, scale, true).unwrap();
        for (a, b) in out.iter().zip(expect.iter()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn invalid_scales_rejected() {
        let img = Array3::zeros((4, 4, 1));
        assert!(bicubic_resize(&img, 0.0, true).is_err());
        assert!(bicubic_resize(&img, -1.0, true).is_err());
        assert!(bicubic_resize(&img, f64::NAN, true).is_err());
    }
}
