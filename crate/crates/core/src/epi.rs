use ndarray::Array3;

use crate::{CoreError, Image, LightField, Result};

/// Horizontal epipolar-plane image for fixed (u, h): a (V, W, C) slice in
/// which row v is row h of view (u, v). Scene points trace lines whose
/// slope is their disparity.
pub fn extract_epi_h(lf: &LightField, u: usize, h: usize) -> Result<Image> {
    let d = lf.dims();
    if u >= d.u {
        return Err(CoreError::IndexOutOfRange {
            what: "u",
            got: u,
            limit: d.u,
        });
    }
    if h >= d.h {
        return Err(CoreError::IndexOutOfRange {
            what: "h",
            got: h,
            limit: d.h,
        });
    }
    let mut out = Array3::zeros((d.v, d.w, d.c));
    for v in 0..d.v {
        for w in 0..d.w {
            for c in 0..d.c {
                out[[v, w, c]] = lf.data()[[u, v, h, w, c]];
            }
        }
    }
    Ok(out)
}

/// Vertical epipolar-plane image for fixed (v, w): a (U, H, C) slice in
/// which row u is column w of view (u, v).
pub fn extract_epi_v(lf: &LightField, v: usize, w: usize) -> Result<Image> {
    let d = lf.dims();
    if v >= d.v {
        return Err(CoreError::IndexOutOfRange {
            what: "v",
            got: v,
            limit: d.v,
        });
    }
    if w >= d.w {
        return Err(CoreError::IndexOutOfRange {
            what: "w",
            got: w,
            limit: d.w,
        });
    }
    let mut out = Array3::zeros((d.u, d.h, d.c));
    for u in 0..d.u {
        for h in 0..d.h {
            for c in 0..d.c {
                out[[u, h, c]] = lf.data()[[u, v, h, w, c]];
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array5;

    #[test]
    fn constant_lf_gives_constant_epi() {
        let lf = LightField::new(Array5::from_elem((2, 3, 4, 5, 1), 0.25)).unwrap();
        let epi = extract_epi_h(&lf, 1, 2).unwrap();
        assert!(epi.iter().all(|&x| x == 0.25));
    }

    #[test]
    fn single_column_grid_epi_is_the_view_row() {
        // V=1: the EPI degenerates to one row, equal to row h of view (u, 0).
        let lf = LightField::new(
            Array5::from_shape_vec((2, 1, 3, 4, 1), (0..24).map(|i| i as f64).collect()).unwrap(),
        )
        .unwrap();
        let epi = extract_epi_h(&lf, 1, 2).unwrap();
        assert_eq!(epi.dim(), (1, 4, 1));
        for w in 0..4 {
            assert_eq!(epi[[0, w, 0]], lf.data()[[1, 0, 2, w, 0]]);
        }
    }

    #[test]
    fn shifted_lf_has_linear_epi() {
        // Views share a base signal shifted d pixels per angular step, so
        // EPI row v+1 equals EPI row v advanced by d samples.
        let (v_res, w_res, d) = (4usize, 10usize, 2usize);
        let base_len = w_res + d * (v_res - 1);
        let base: Vec<f64> = (0..base_len).map(|i| ((i * i + 3) % 17) as f64).collect();
        let mut data = Array5::zeros((1, v_res, 1, w_res, 1));
        for v in 0..v_res {
            for w in 0..w_res {
                data[[0, v, 0, w, 0]] = base[v * d + w];
            }
        }
        let lf = LightField::new(data).unwrap();
        let epi = extract_epi_h(&lf, 0, 0).unwrap();
        for v in 0..v_res - 1 {
            for w in 0..w_res - d {
                assert_eq!(epi[[v + 1, w, 0]], epi[[v, w + d, 0]]);
            }
        }
    }

    #[test]
    fn out_of_range_indices_rejected() {
        let lf = LightField::new(Array5::from_elem((2, 2, 3, 3, 1), 0.5)).unwrap();
        assert!(extract_epi_h(&lf, 2, 0).is_err());
        assert!(extract_epi_h(&lf, 0, 3).is_err());
        assert!(extract_epi_v(&lf, 0, 3).is_err());
    }
}
