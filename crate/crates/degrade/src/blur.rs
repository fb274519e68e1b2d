use lfd_core::Image;
use ndarray::Array3;

use crate::kernel::{Kernel21, KERNEL_SIZE};

/// Folds an out-of-range index back into `[0, n)` by edge-excluding
/// reflection: `-1 -> 1`, `n -> n-2`.
pub(crate) fn reflect_index(mut i: isize, n: usize) -> usize {
    let n = n as isize;
    if n == 1 {
        return 0;
    }
    loop {
        if i < 0 {
            i = -i;
        } else if i >= n {
            i = 2 * (n - 1) - i;
        } else {
            return i as usize;
        }
    }
}

/// 2D correlation with `k` per channel, reflect padding at borders, same
/// output size. The kernel is symmetric, so this equals convolution.
pub fn blur(img: &Image, k: &Kernel21) -> Image {
    if k.is_delta() {
        return img.clone();
    }
    let (h, w, c) = img.dim();
    let r = KERNEL_SIZE as isize / 2;
    let weights = k.weights();
    let mut out = Array3::zeros((h, w, c));
    for y in 0..h {
        // Row fold positions are shared by every pixel of the row.
        let rows: Vec<usize> = (-r..=r)
            .map(|dy| reflect_index(y as isize + dy, h))
            .collect();
        for x in 0..w {
            let cols: Vec<usize> = (-r..=r)
                .map(|dx| reflect_index(x as isize + dx, w))
                .collect();
            for ch in 0..c {
                let mut acc = 0.0;
                for (ky, &sy) in rows.iter().enumerate() {
                    for (kx, &sx) in cols.iter().enumerate() {
                        acc += weights[[ky, kx]] * img[[sy, sx, ch]];
                    }
                }
                out[[y, x, ch]] = acc;
            }
        }
    }
    out
}
