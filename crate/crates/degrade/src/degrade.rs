use lfd_core::{Image, LightField};
use rayon::prelude::*;

use crate::kernel::gaussian_kernel;
use crate::rng::NoiseStream;
use crate::{add_awgn, bicubic_resize, blur, DegradeError, Result};

/// One point of the degradation model: blur width (HR pixels), noise
/// level on the 0 to 255 intensity scale, and the downscale factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degradation {
    pub sigma_b: f64,
    pub noise_level: f64,
    pub alpha: u32,
}

impl Degradation {
    pub fn new(sigma_b: f64, noise_level: f64, alpha: u32) -> Result<Self> {
        if !(sigma_b >= 0.0) || !sigma_b.is_finite() {
            return Err(DegradeError::InvalidSigma { got: sigma_b });
        }
        if !(noise_level >= 0.0) || !noise_level.is_finite() {
            return Err(DegradeError::InvalidNoise { got: noise_level });
        }
        if alpha == 0 {
            return Err(DegradeError::ZeroAlpha);
        }
        Ok(Degradation {
            sigma_b,
            noise_level,
            alpha,
        })
    }
}

/// Clamps every sample into `[0, 1]`; in-range values pass unchanged.
pub fn clip_unit(img: &mut Image) {
    img.mapv_inplace(|v| v.clamp(0.0, 1.0));
}

/// Applies the full degradation to every view: blur, antialiased bicubic
/// downscale by `1/alpha`, per-view AWGN, clip to `[0, 1]`. With
/// `sigma_b = 0` and `noise_level = 0` this reduces bitwise to the
/// clipped bicubic path.
pub fn degrade_lf(lf: &LightField, d: &Degradation, seed: u64) -> Result<LightField> {
    let dims = lf.dims();
    if d.alpha == 0 {
        return Err(DegradeError::ZeroAlpha);
    }
    let alpha = d.alpha as usize;
    if dims.h % alpha != 0 || dims.w % alpha != 0 {
        return Err(DegradeError::NotDivisible {
            h: dims.h,
            w: dims.w,
            alpha: d.alpha,
        });
    }
    let kernel = gaussian_kernel(d.sigma_b)?;
    let scale = 1.0 / d.alpha as f64;

    let views: Vec<(usize, usize)> = (0..dims.u)
        .flat_map(|u| (0..dims.v).map(move |v| (u, v)))
        .collect();
    let degraded = views
        .into_par_iter()
        .map(|(u, v)| -> Result<Image> {
            let hr = lf.view_image(u, v)?;
            let blurred = blur(&hr, &kernel);
            let lr = bicubic_resize(&blurred, scale, true)?;
            let mut noisy = add_awgn(&lr, d.noise_level, &NoiseStream::new(seed, u, v))?;
            clip_unit(&mut noisy);
            Ok(noisy)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LightField::from_views(dims.u, dims.v, &degraded)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lfd_core::LfDims;
    use ndarray::Array5;

    fn textured_lf(u: usize, v: usize, h: usize, w: usize) -> LightField {
        let data = Array5::from_shape_fn((u, v, h, w, 3), |(a, b, y, x, c)| {
            let t = (a * 131 + b * 97 + y * 17 + x * 5 + c * 3) as f64;
            0.5 + 0.45 * (t * 0.61).sin()
        });
        LightField::new(data).unwrap()
    }

    // Checkerboard content overshoots under the cubic kernel, so the
    // degenerate path must agree with resize-then-clip, not resize alone.
    fn checker_lf(u: usize, v: usize, h: usize, w: usize) -> LightField {
        let data = Array5::from_shape_fn((u, v, h, w, 3), |(_, _, y, x, _)| {
            (((y / 2) + (x / 2)) % 2) as f64
        });
        LightField::new(data).unwrap()
    }

    #[test]
    fn degeneracy_equals_clipped_bicubic_bitwise() {
        let lf = checker_lf(2, 2, 16, 16);
        let d = Degradation::new(0.0, 0.0, 4).unwrap();
        let out = degrade_lf(&lf, &d, 7).unwrap();
        for u in 0..2 {
            for v in 0..2 {
                let hr = lf.view_image(u, v).unwrap();
                let mut pure = bicubic_resize(&hr, 0.25, true).unwrap();
                clip_unit(&mut pure);
                assert_eq!(out.view_image(u, v).unwrap(), pure, "view ({u},{v})");
            }
        }
    }

    #[test]
    fn degeneracy_equals_plain_bicubic_on_in_range_content() {
        // Smooth mid-range content never overshoots, so the clip is a
        // no-op and the equality tightens to resize alone.
        let lf = textured_lf(2, 2, 16, 16);
        let d = Degradation::new(0.0, 0.0, 4).unwrap();
        let out = degrade_lf(&lf, &d, 0).unwrap();
        for u in 0..2 {
            for v in 0..2 {
                let hr = lf.view_image(u, v).unwrap();
                let pure = bicubic_resize(&hr, 0.25, true).unwrap();
                assert_eq!(out.view_image(u, v).unwrap(), pure);
            }
        }
    }

    #[test]
    fn constant_half_is_a_fixed_point() {
        let data = Array5::from_elem((2, 2, 16, 16, 3), 0.5);
        let lf = LightField::new(data).unwrap();
        let d = Degradation::new(2.0, 0.0, 4).unwrap();
        let out = degrade_lf(&lf, &d, 3).unwrap();
        assert_eq!(
            out.dims(),
            LfDims {
                u: 2,
                v: 2,
                h: 4,
                w: 4,
                c: 3
            }
        );
        for &x in out.data().iter() {
            assert!((x - 0.5).abs() <= 1e-9);
        }
    }

    #[test]
    fn views_receive_distinct_noise() {
        let data = Array5::from_elem((1, 2, 8, 8, 3), 0.5);
        let lf = LightField::new(data).unwrap();
        let d = Degradation::new(0.0, 25.0, 4).unwrap();
        let out = degrade_lf(&lf, &d, 5).unwrap();
        assert_ne!(
            out.view_image(0, 0).unwrap(),
            out.view_image(0, 1).unwrap()
        );
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let lf = textured_lf(3, 3, 16, 16);
        let d = Degradation::new(1.5, 15.0, 4).unwrap();
        let parallel = degrade_lf(&lf, &d, 99).unwrap();
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| degrade_lf(&lf, &d, 99).unwrap());
        assert_eq!(parallel.data(), single.data());
    }

    #[test]
    fn indivisible_sizes_rejected() {
        let lf = textured_lf(1, 1, 10, 16);
        let d = Degradation::new(0.0, 0.0, 4).unwrap();
        assert!(matches!(
            degrade_lf(&lf, &d, 0),
            Err(DegradeError::NotDivisible { .. })
        ));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(Degradation::new(-1.0, 0.0, 4).is_err());
        assert!(Degradation::new(0.0, -5.0, 4).is_err());
        assert!(Degradation::new(0.0, 0.0, 0).is_err());
    }

    #[test]
    fn output_stays_in_unit_range() {
        let lf = checker_lf(2, 2, 16, 16);
        let d = Degradation::new(0.5, 50.0, 4).unwrap();
        let out = degrade_lf(&lf, &d, 11).unwrap();
        for &v in out.data().iter() {
            assert!((0.0..=1.0).contains(&v));
        }
    }
}
