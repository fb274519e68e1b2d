use ndarray::Array4;

use crate::{CoreError, Result};

/// Which plane axis a 1D shuffle expands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShuffleAxis {
    P,
    Q,
}

/// Sub-pixel rearrangement (B, r²·C, P, Q) -> (B, C, r·P, r·Q):
/// out[b, c, p·r+i, q·r+j] = in[b, c·r² + i·r + j, p, q].
pub fn pixel_shuffle_2d(x: &Array4<f64>, r: usize) -> Result<Array4<f64>> {
    if r == 0 {
        return Err(CoreError::ZeroShuffleFactor);
    }
    let (b, ch, p, q) = x.dim();
    if ch % (r * r) != 0 {
        return Err(CoreError::ChannelsNotDivisible {
            context: "pixel_shuffle_2d",
            channels: ch,
            divisor: r * r,
        });
    }
    let c = ch / (r * r);
    let mut out = Array4::zeros((b, c, p * r, q * r));
    for bi in 0..b {
        for ci in 0..c {
            for i in 0..r {
                for j in 0..r {
                    let src_c = ci * r * r + i * r + j;
                    for pi in 0..p {
                        for qi in 0..q {
                            out[[bi, ci, pi * r + i, qi * r + j]] = x[[bi, src_c, pi, qi]];
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Inverse of [`pixel_shuffle_2d`].
pub fn pixel_unshuffle_2d(x: &Array4<f64>, r: usize) -> Result<Array4<f64>> {
    if r == 0 {
        return Err(CoreError::ZeroShuffleFactor);
    }
    let (b, c, pr, qr) = x.dim();
    if pr % r != 0 || qr % r != 0 {
        return Err(CoreError::DimMismatch {
            context: "pixel_unshuffle_2d",
            expected: format!("plane divisible by r={r}"),
            got: format!("{pr}x{qr}"),
        });
    }
    let (p, q) = (pr / r, qr / r);
    let mut out = Array4::zeros((b, c * r * r, p, q));
    for bi in 0..b {
        for ci in 0..c {
            for i in 0..r {
                for j in 0..r {
                    let dst_c = ci * r * r + i * r + j;
                    for pi in 0..p {
                        for qi in 0..q {
                            out[[bi, dst_c, pi, qi]] = x[[bi, ci, pi * r + i, qi * r + j]];
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One-axis rearrangement (B, r·C, P, Q) -> (B, C, r·P, Q) for axis P
/// (resp. Q): out[b, c, p·r+i, q] = in[b, c·r + i, p, q].
pub fn pixel_shuffle_1d(x: &Array4<f64>, r: usize, axis: ShuffleAxis) -> Result<Array4<f64>> {
    if r == 0 {
        return Err(CoreError::ZeroShuffleFactor);
    }
    let (b, ch, p, q) = x.dim();
    if ch % r != 0 {
        return Err(CoreError::ChannelsNotDivisible {
            context: "pixel_shuffle_1d",
            channels: ch,
            divisor: r,
        });
    }
    let c = ch / r;
    let mut out = match axis {
        ShuffleAxis::P => Array4::zeros((b, c, p * r, q)),
        ShuffleAxis::Q => Array4::zeros((b, c, p, q * r)),
    };
    for bi in 0..b {
        for ci in 0..c {
            for i in 0..r {
                let src_c = ci * r + i;
                for pi in 0..p {
                    for qi in 0..q {
                        match axis {
                            ShuffleAxis::P => {
                                out[[bi, ci, pi * r + i, qi]] = x[[bi, src_c, pi, qi]]
                            }
                            ShuffleAxis::Q => {
                                out[[bi, ci, pi, qi * r + i]] = x[[bi, src_c, pi, qi]]
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Inverse of [`pixel_shuffle_1d`].
pub fn pixel_unshuffle_1d(x: &Array4<f64>, r: usize, axis: ShuffleAxis) -> Result<Array4<f64>> {
    if r == 0 {
        return Err(CoreError::ZeroShuffleFactor);
    }
    let (b, c, p, q) = x.dim();
    let (np, nq) = match axis {
        ShuffleAxis::P => {
            if p % r != 0 {
                return Err(CoreError::DimMismatch {
                    context: "pixel_unshuffle_1d",
                    expected: format!("P divisible by r={r}"),
                    got: format!("P={p}"),
                });
            }
            (p / r, q)
        }
        ShuffleAxis::Q => {
            if q % r != 0 {
                return Err(CoreError::DimMismatch {
                    context: "pixel_unshuffle_1d",
                    expected: format!("Q divisible by r={r}"),
                    got: format!("Q={q}"),
                });
            }
            (p, q / r)
        }
    };
    let mut out = Array4::zeros((b, c * r, np, nq));
    for bi in 0..b {
        for ci in 0..c {
            for i in 0..r {
                let dst_c = ci * r + i;
                for pi in 0..np {
                    for qi in 0..nq {
                        out[[bi, dst_c, pi, qi]] = match axis {
                            ShuffleAxis::P => x[[bi, ci, pi * r + i, qi]],
                            ShuffleAxis::Q => x[[bi, ci, pi, qi * r + i]],
                        };
                    }
                }
            }
        }
    }
    Ok(out)
}
