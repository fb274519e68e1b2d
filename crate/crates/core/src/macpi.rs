use ndarray::Array3;

use crate::{CoreError, Image, LightField, Result};

/// Interleaves all views into a single macro-pixel image of size
/// (U·H, V·W, C): pixel (u, v, h, w) lands at (h·U + u, w·V + v).
pub fn to_macpi(lf: &LightField) -> Image {
    let d = lf.dims();
    let mut out = Array3::zeros((d.u * d.h, d.v * d.w, d.c));
    for ((u, v, h, w, c), &x) in lf.data().indexed_iter() {
        out[[h * d.u + u, w * d.v + v, c]] = x;
    }
    out
}

/// Inverse of [`to_macpi`] for the stated angular resolution.
pub fn from_macpi(img: &Image, u: usize, v: usize) -> Result<LightField> {
    let (rows, cols, c) = img.dim();
    if u == 0 || v == 0 || rows % u != 0 || cols % v != 0 {
        return Err(CoreError::DimMismatch {
            context: "from_macpi",
            expected: format!("rows divisible by U={u}, cols divisible by V={v}"),
            got: format!("{rows}x{cols}"),
        });
    }
    let (h, w) = (rows / u, cols / v);
    let mut data = ndarray::Array5::zeros((u, v, h, w, c));
    for ((r, col, ci), &x) in img.indexed_iter() {
        data[[r % u, col % v, r / u, col / v, ci]] = x;
    }
    LightField::new(data)
}
