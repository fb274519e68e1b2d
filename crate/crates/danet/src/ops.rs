use ndarray::{Array1, Array2, Array3, Array4, ArrayView3, Axis};
use rayon::prelude::*;

use crate::config::LEAKY_SLOPE;
use crate::{DanetError, Result};

/// Leaky rectifier with the network-wide negative slope.
pub(crate) fn leaky(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        LEAKY_SLOPE * x
    }
}

/// Derivative of [`leaky`]; the kink at zero takes the negative-side slope.
pub(crate) fn leaky_grad(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else {
        LEAKY_SLOPE
    }
}

pub(crate) fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Applies [`leaky`] elementwise, consuming the input.
pub(crate) fn map_leaky<D: ndarray::Dimension>(
    mut x: ndarray::Array<f64, D>,
) -> ndarray::Array<f64, D> {
    x.mapv_inplace(leaky);
    x
}

/// Affine map `w . x + b` with `w` of shape (out, in).
pub(crate) fn fc(w: &Array2<f64>, b: &Array1<f64>, x: &Array1<f64>) -> Array1<f64> {
    w.dot(x) + b
}

/// Padding mode for [`conv2d`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pad {
    /// Zero padding that preserves the plane size. Odd kernels only.
    Same,
    /// No padding; the output plane shrinks by `k - 1` per axis.
    Valid,
}

/// 2D cross-correlation over a batched plane.
///
/// `input` is (B, C_in, P, Q), `weight` is (C_out, C_in, KH, KW), `bias`
/// is (C_out). Batch elements are independent and processed in parallel.
pub(crate) fn conv2d(
    input: &Array4<f64>,
    weight: &Array4<f64>,
    bias: &Array1<f64>,
    pad: Pad,
) -> Result<Array4<f64>> {
    let (batch, cin, p, q) = input.dim();
    let (cout, wcin, kh, kw) = weight.dim();
    let mismatch = |context: &str, expected: String, got: String| {
        DanetError::Core(lfd_core::CoreError::DimMismatch {
            context: "conv2d",
            expected,
            got: format!("{context}: {got}"),
        })
    };
    if wcin != cin {
        return Err(mismatch("input channels", cin.to_string(), wcin.to_string()));
    }
    if bias.len() != cout {
        return Err(mismatch("bias length", cout.to_string(), bias.len().to_string()));
    }
    let (ph, pw) = match pad {
        Pad::Same => {
            if kh % 2 == 0 || kw % 2 == 0 {
                return Err(mismatch("same-pad kernel", "odd".into(), format!("{kh}x{kw}")));
            }
            (kh / 2, kw / 2)
        }
        Pad::Valid => (0, 0),
    };
    if p + 2 * ph < kh || q + 2 * pw < kw {
        return Err(mismatch(
            "plane",
            format!(">= {kh}x{kw}"),
            format!("{p}x{q}"),
        ));
    }
    let (op, oq) = (p + 2 * ph - kh + 1, q + 2 * pw - kw + 1);

    let planes: Vec<Array3<f64>> = (0..batch)
        .into_par_iter()
        .map(|bi| conv_single(input.index_axis(Axis(0), bi), weight, bias, ph, pw, op, oq))
        .collect();

    let mut out = Array4::zeros((batch, cout, op, oq));
    for (bi, plane) in planes.into_iter().enumerate() {
        out.index_axis_mut(Axis(0), bi).assign(&plane);
    }
    Ok(out)
}

fn conv_single(
    x: ArrayView3<'_, f64>,
    weight: &Array4<f64>,
    bias: &Array1<f64>,
    ph: usize,
    pw: usize,
    op: usize,
    oq: usize,
) -> Array3<f64> {
    let (cin, p, q) = x.dim();
    let (cout, _, kh, kw) = weight.dim();

    // Zero-padded copy so the kernel loops need no bounds checks.
    let (pp, pq) = (p + 2 * ph, q + 2 * pw);
    let mut padded = Array3::zeros((cin, pp, pq));
    padded
        .slice_mut(ndarray::s![.., ph..ph + p, pw..pw + q])
        .assign(&x);
    let padded = padded.as_slice().expect("standard layout");
    let w = weight.as_slice().expect("standard layout");

    let mut out = Array3::zeros((cout, op, oq));
    {
        let o = out.as_slice_mut().expect("standard layout");
        let mut row = vec![0.0f64; oq];
        for co in 0..cout {
            for y in 0..op {
                row.fill(bias[co]);
                for ci in 0..cin {
                    for ky in 0..kh {
                        let src = &padded[ci * pp * pq + (y + ky) * pq..];
                        for kx in 0..kw {
                            let wv = w[((co * cin + ci) * kh + ky) * kw + kx];
                            let src = &src[kx..kx + oq];
                            for (r, s) in row.iter_mut().zip(src) {
                                *r += wv * s;
                            }
                        }
                    }
                }
                o[co * op * oq + y * oq..co * op * oq + y * oq + oq].copy_from_slice(&row);
            }
        }
    }
    out
}
