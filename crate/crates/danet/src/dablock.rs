use std::collections::BTreeMap;

use ndarray::{Array1, Array3, Array4, ArrayD, Axis};
use rayon::prelude::*;

use crate::ops::{conv2d, fc, leaky, leaky_grad, sigmoid, Pad};
use crate::{DanetError, NetConfig, NetParams, Result};

/// Gradients of a scalar loss through [`da_block_forward`], produced by
/// [`da_block_backward`]. Parameter gradients are keyed by full name.
#[derive(Debug, Clone)]
pub struct DaBlockGrads {
    pub d_feat: Array4<f64>,
    pub d_vdg: Array1<f64>,
    pub d_params: BTreeMap<String, ArrayD<f64>>,
}

/// Edge-excluding reflection into `[0, n)`; the border sample is not
/// repeated. Matches the padding used by the blur operator.
fn reflect(mut i: isize, n: usize) -> usize {
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

/// Kernels the block would generate for `v_dg`, shape (C, k, k).
pub(crate) fn block_kernels(
    v_dg: &Array1<f64>,
    params: &NetParams,
    prefix: &str,
    cfg: &NetConfig,
) -> Result<Array3<f64>> {
    let p = DaParams::load(params, prefix)?;
    let a1 = fc(&p.kgen_w1, &p.kgen_b1, v_dg).mapv(leaky);
    let kflat = fc(&p.kgen_w2, &p.kgen_b2, &a1);
    Ok(kflat
        .to_shape((cfg.channels, cfg.da_kernel, cfg.da_kernel))
        .expect("kgen_fc2 output length is C*k*k")
        .to_owned())
}

struct DaParams {
    kgen_w1: ndarray::Array2<f64>,
    kgen_b1: Array1<f64>,
    kgen_w2: ndarray::Array2<f64>,
    kgen_b2: Array1<f64>,
    conv_w: Array4<f64>,
    conv_b: Array1<f64>,
    ca_w1: ndarray::Array2<f64>,
    ca_b1: Array1<f64>,
    ca_w2: ndarray::Array2<f64>,
    ca_b2: Array1<f64>,
}

impl DaParams {
    fn load(params: &NetParams, prefix: &str) -> Result<Self> {
        Ok(Self {
            kgen_w1: params.mat(&format!("{prefix}.kgen_fc1.weight"))?,
            kgen_b1: params.vec1(&format!("{prefix}.kgen_fc1.bias"))?,
            kgen_w2: params.mat(&format!("{prefix}.kgen_fc2.weight"))?,
            kgen_b2: params.vec1(&format!("{prefix}.kgen_fc2.bias"))?,
            conv_w: params.conv(&format!("{prefix}.conv1x1.weight"))?,
            conv_b: params.vec1(&format!("{prefix}.conv1x1.bias"))?,
            ca_w1: params.mat(&format!("{prefix}.ca_fc1.weight"))?,
            ca_b1: params.vec1(&format!("{prefix}.ca_fc1.bias"))?,
            ca_w2: params.mat(&format!("{prefix}.ca_fc2.weight"))?,
            ca_b2: params.vec1(&format!("{prefix}.ca_fc2.bias"))?,
        })
    }
}

/// Forward intermediates kept for the backward pass.
struct DaTrace {
    h1: Array1<f64>,
    a1: Array1<f64>,
    kern: Array3<f64>,
    dw: Array4<f64>,
    s: Array4<f64>,
    hc: Array1<f64>,
    g: Array1<f64>,
    out: Array4<f64>,
}

/// Per-channel spatial correlation with kernels generated from the
/// degradation representation; reflect padding keeps the plane size.
fn depthwise_reflect(feat: &Array4<f64>, kern: &Array3<f64>) -> Array4<f64> {
    let (batch, c, p, q) = feat.dim();
    let (_, kk, _) = kern.dim();
    let off = (kk / 2) as isize;
    let planes: Vec<Array3<f64>> = (0..batch)
        .into_par_iter()
        .map(|b| {
            let x = feat.index_axis(Axis(0), b);
            let mut out = Array3::zeros((c, p, q));
            for ci in 0..c {
                for y in 0..p {
                    for xq in 0..q {
                        let mut acc = 0.0;
                        for i in 0..kk {
                            let sy = reflect(y as isize + i as isize - off, p);
                            for j in 0..kk {
                                let sx = reflect(xq as isize + j as isize - off, q);
                                acc += kern[[ci, i, j]] * x[[ci, sy, sx]];
                            }
                        }
                        out[[ci, y, xq]] = acc;
                    }
                }
            }
            out
        })
        .collect();
    let mut out = Array4::zeros((batch, c, p, q));
    for (b, plane) in planes.into_iter().enumerate() {
        out.index_axis_mut(Axis(0), b).assign(&plane);
    }
    out
}

fn da_trace(
    feat: &Array4<f64>,
    v_dg: &Array1<f64>,
    p: &DaParams,
    cfg: &NetConfig,
) -> Result<DaTrace> {
    let c = cfg.channels;
    let kk = cfg.da_kernel;
    if feat.dim().1 != c {
        return Err(DanetError::BadChannels {
            expected: c,
            got: feat.dim().1,
        });
    }
    if v_dg.len() != cfg.repr_len() {
        return Err(DanetError::BadChannels {
            expected: cfg.repr_len(),
            got: v_dg.len(),
        });
    }

    // Kernel generation: one set of per-channel kernels for the whole
    // batch, since the degradation is shared across views.
    let h1 = fc(&p.kgen_w1, &p.kgen_b1, v_dg);
    let a1 = h1.mapv(leaky);
    let kflat = fc(&p.kgen_w2, &p.kgen_b2, &a1);
    let kern = kflat
        .to_shape((c, kk, kk))
        .expect("kgen_fc2 output length is C*k*k")
        .to_owned();

    let dw = depthwise_reflect(feat, &kern);
    let s = conv2d(&dw, &p.conv_w, &p.conv_b, Pad::Valid)?;

    // Channel attention from the same representation.
    let hc = fc(&p.ca_w1, &p.ca_b1, v_dg);
    let ac = hc.mapv(leaky);
    let z = fc(&p.ca_w2, &p.ca_b2, &ac);
    let g = z.mapv(sigmoid);

    let mut out = feat + &s;
    let (batch, _, ph, qw) = out.dim();
    for b in 0..batch {
        for ci in 0..c {
            for y in 0..ph {
                for x in 0..qw {
                    out[[b, ci, y, x]] += g[ci] * s[[b, ci, y, x]];
                }
            }
        }
    }

    Ok(DaTrace {
        h1,
        a1,
        kern,
        dw,
        s,
        hc,
        g,
        out,
    })
}

/// Degradation-adaptive block.
///
/// Per-channel spatial kernels generated from `v_dg` are applied with
/// reflect padding, mixed by a pointwise convolution, and gated by a
/// sigmoid channel attention, also generated from `v_dg`:
/// `out = feat + (1 + ca) * F_spa`. With all-zero parameters the block is
/// the identity on `feat`.
pub fn da_block_forward(
    feat: &Array4<f64>,
    v_dg: &Array1<f64>,
    params: &NetParams,
    prefix: &str,
    cfg: &NetConfig,
) -> Result<Array4<f64>> {
    let p = DaParams::load(params, prefix)?;
    Ok(da_trace(feat, v_dg, &p, cfg)?.out)
}

/// Analytic gradients of `sum(upstream * da_block_forward(...))` with
/// respect to the feature map, the degradation representation, and every
/// parameter tensor of the block.
pub fn da_block_backward(
    feat: &Array4<f64>,
    v_dg: &Array1<f64>,
    params: &NetParams,
    prefix: &str,
    cfg: &NetConfig,
    upstream: &Array4<f64>,
) -> Result<DaBlockGrads> {
    let p = DaParams::load(params, prefix)?;
    let t = da_trace(feat, v_dg, &p, cfg)?;
    if upstream.dim() != t.out.dim() {
        return Err(DanetError::Core(lfd_core::CoreError::DimMismatch {
            context: "da_block_backward",
            expected: format!("{:?}", t.out.dim()),
            got: format!("{:?}", upstream.dim()),
        }));
    }

    let c = cfg.channels;
    let kk = cfg.da_kernel;
    let off = (kk / 2) as isize;
    let (batch, _, ph, qw) = feat.dim();

    // out = feat + (1 + g) * s
    let mut d_s = Array4::zeros(upstream.raw_dim());
    let mut d_g = Array1::zeros(c);
    for b in 0..batch {
        for ci in 0..c {
            for y in 0..ph {
                for x in 0..qw {
                    let u = upstream[[b, ci, y, x]];
                    d_s[[b, ci, y, x]] = u * (1.0 + t.g[ci]);
                    d_g[ci] += u * t.s[[b, ci, y, x]];
                }
            }
        }
    }

    // Channel attention chain: g = sigmoid(ca_w2 . leaky(ca_w1 . v + b1) + b2).
    let d_z = &d_g * &t.g * &t.g.mapv(|gv| 1.0 - gv);
    let ac = t.hc.mapv(leaky);
    let d_ca_w2 = outer(&d_z, &ac);
    let d_ca_b2 = d_z.clone();
    let d_ac = p.ca_w2.t().dot(&d_z);
    let d_hc = &d_ac * &t.hc.mapv(leaky_grad);
    let d_ca_w1 = outer(&d_hc, v_dg);
    let d_ca_b1 = d_hc.clone();
    let mut d_vdg = p.ca_w1.t().dot(&d_hc);

    // Pointwise mix: s[b,co] = sum_ci conv_w[co,ci] * dw[b,ci] + conv_b[co].
    let mut d_conv_w: Array4<f64> = Array4::zeros(p.conv_w.raw_dim());
    let mut d_conv_b: Array1<f64> = Array1::zeros(c);
    let mut d_dw: Array4<f64> = Array4::zeros(t.dw.raw_dim());
    for b in 0..batch {
        for y in 0..ph {
            for x in 0..qw {
                for co in 0..c {
                    let ds = d_s[[b, co, y, x]];
                    d_conv_b[co] += ds;
                    for ci in 0..c {
                        d_conv_w[[co, ci, 0, 0]] += ds * t.dw[[b, ci, y, x]];
                        d_dw[[b, ci, y, x]] += p.conv_w[[co, ci, 0, 0]] * ds;
                    }
                }
            }
        }
    }

    // Depthwise correlation: gradient w.r.t. the kernels gathers, the
    // gradient w.r.t. the features scatters into the same reflected
    // source index used by the forward pass.
    let mut d_kern = Array3::zeros((c, kk, kk));
    let mut d_feat = upstream.clone();
    for b in 0..batch {
        for ci in 0..c {
            for y in 0..ph {
                for x in 0..qw {
                    let dd = d_dw[[b, ci, y, x]];
                    if dd == 0.0 {
                        continue;
                    }
                    for i in 0..kk {
                        let sy = reflect(y as isize + i as isize - off, ph);
                        for j in 0..kk {
                            let sx = reflect(x as isize + j as isize - off, qw);
                            d_kern[[ci, i, j]] += dd * feat[[b, ci, sy, sx]];
                            d_feat[[b, ci, sy, sx]] += dd * t.kern[[ci, i, j]];
                        }
                    }
                }
            }
        }
    }

    // Kernel generation chain mirrors the attention chain.
    let d_kflat = Array1::from_iter(d_kern.iter().copied());
    let d_kgen_w2 = outer(&d_kflat, &t.a1);
    let d_kgen_b2 = d_kflat.clone();
    let d_a1 = p.kgen_w2.t().dot(&d_kflat);
    let d_h1 = &d_a1 * &t.h1.mapv(leaky_grad);
    let d_kgen_w1 = outer(&d_h1, v_dg);
    let d_kgen_b1 = d_h1.clone();
    d_vdg += &p.kgen_w1.t().dot(&d_h1);

    let mut d_params: BTreeMap<String, ArrayD<f64>> = BTreeMap::new();
    let mut put = |name: String, arr: ArrayD<f64>| {
        d_params.insert(name, arr);
    };
    put(format!("{prefix}.kgen_fc1.weight"), d_kgen_w1.into_dyn());
    put(format!("{prefix}.kgen_fc1.bias"), d_kgen_b1.into_dyn());
    put(format!("{prefix}.kgen_fc2.weight"), d_kgen_w2.into_dyn());
    put(format!("{prefix}.kgen_fc2.bias"), d_kgen_b2.into_dyn());
    put(format!("{prefix}.conv1x1.weight"), d_conv_w.into_dyn());
    put(format!("{prefix}.conv1x1.bias"), d_conv_b.into_dyn());
    put(format!("{prefix}.ca_fc1.weight"), d_ca_w1.into_dyn());
    put(format!("{prefix}.ca_fc1.bias"), d_ca_b1.into_dyn());
    put(format!("{prefix}.ca_fc2.weight"), d_ca_w2.into_dyn());
    put(format!("{prefix}.ca_fc2.bias"), d_ca_b2.into_dyn());

    Ok(DaBlockGrads {
        d_feat,
        d_vdg,
        d_params,
    })
}

fn outer(a: &Array1<f64>, b: &Array1<f64>) -> ndarray::Array2<f64> {
    let mut m = ndarray::Array2::zeros((a.len(), b.len()));
    for i in 0..a.len() {
        for j in 0..b.len() {
            m[[i, j]] = a[i] * b[j];
        }
    }
    m
}
