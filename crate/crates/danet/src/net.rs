use lfd_core::{branch_view, inverse_branch_view, Branch, BranchView, LfDims, LightField};
use lfd_degrade::{bicubic_resize, Degradation};
use ndarray::Array4;

use crate::ops::{conv2d, map_leaky, Pad};
use crate::{
    da_block_forward, distg_block_forward, kpe_forward, DanetError, NetConfig, NetParams, Result,
};

fn fold_spatial(lf: &LightField) -> Array4<f64> {
    branch_view(lf, Branch::Spatial).into_data()
}

fn unfold_spatial(data: Array4<f64>, dims: LfDims) -> Result<LightField> {
    Ok(inverse_branch_view(
        &BranchView::from_parts(Branch::Spatial, data),
        dims,
    )?)
}

/// Full reference forward pass.
///
/// A head convolution lifts each view to feature space; every group runs
/// one degradation-adaptive block followed by the disentangling blocks
/// and closes with a group residual; the tail upsamples by two x2 pixel
/// shuffles and projects back to RGB. The result is added to a per-view
/// plain bicubic upscale of the input, so the network learns a residual:
/// with all-zero parameters the output equals that bicubic upscale
/// bitwise.
pub fn network_forward(
    lr: &LightField,
    d: &Degradation,
    params: &NetParams,
    cfg: &NetConfig,
) -> Result<LightField> {
    cfg.validate()?;
    let dims = lr.dims();
    if dims.c != 3 {
        return Err(DanetError::BadChannels {
            expected: 3,
            got: dims.c,
        });
    }
    if dims.u != cfg.ang_res || dims.v != cfg.ang_res {
        return Err(DanetError::BadAngular {
            expected: cfg.ang_res,
            got_u: dims.u,
            got_v: dims.v,
        });
    }
    if d.alpha != cfg.alpha {
        return Err(DanetError::BadConfig {
            reason: format!(
                "degradation alpha {} does not match the network alpha {}",
                d.alpha, cfg.alpha
            ),
        });
    }

    let v_dg = kpe_forward(d, params, cfg)?;

    // Head: per-view lift into feature space.
    let head_w = params.conv("head.weight")?;
    let head_b = params.vec1("head.bias")?;
    let lifted = conv2d(&fold_spatial(lr), &head_w, &head_b, Pad::Same)?;
    let feat_dims = LfDims {
        c: cfg.channels,
        ..dims
    };
    let mut feat = unfold_spatial(lifted, feat_dims)?;

    for g in 1..=cfg.n_groups {
        let group_in = feat.data().clone();
        let adapted = da_block_forward(
            &fold_spatial(&feat),
            &v_dg,
            params,
            &format!("group{g}.dablock"),
            cfg,
        )?;
        feat = unfold_spatial(adapted, feat_dims)?;
        for b in 1..=cfg.blocks_per_group {
            feat = distg_block_forward(&feat, params, &format!("group{g}.distg{b}"), cfg)?;
        }
        feat = LightField::new(feat.data() + &group_in)?;
    }

    // Tail: two x2 shuffle stages, then project to RGB.
    let mut t = fold_spatial(&feat);
    for name in ["tail.up1", "tail.up2"] {
        let w = params.conv(&format!("{name}.weight"))?;
        let b = params.vec1(&format!("{name}.bias"))?;
        t = conv2d(&t, &w, &b, Pad::Same)?;
        t = lfd_core::pixel_shuffle_2d(&t, 2)?;
        t = map_leaky(t);
    }
    let out_w = params.conv("tail.out.weight")?;
    let out_b = params.vec1("tail.out.bias")?;
    let residual = conv2d(&t, &out_w, &out_b, Pad::Same)?;

    let alpha = cfg.alpha as usize;
    let hr_dims = LfDims {
        h: dims.h * alpha,
        w: dims.w * alpha,
        ..dims
    };
    let residual_lf = unfold_spatial(residual, hr_dims)?;

    // Plain bicubic skip: upscaling never needs the antialias dilation.
    let mut skip_views = Vec::with_capacity(dims.u * dims.v);
    for u in 0..dims.u {
        for v in 0..dims.v {
            let img = lr.view_image(u, v)?;
            skip_views.push(bicubic_resize(&img, cfg.alpha as f64, false)?);
        }
    }
    let skip = LightField::from_views(dims.u, dims.v, &skip_views)?;

    Ok(LightField::new(residual_lf.data() + skip.data())?)
}
