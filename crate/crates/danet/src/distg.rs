use lfd_core::{
    branch_view, inverse_branch_view, pixel_shuffle_1d, pixel_shuffle_2d, Branch, BranchView,
    LightField, ShuffleAxis,
};
use ndarray::{Array4, Axis};

use crate::ops::{conv2d, map_leaky, Pad};
use crate::{DanetError, NetConfig, NetParams, Result};

fn unfold(branch: Branch, data: Array4<f64>, lf: &LightField, c: usize) -> Result<LightField> {
    let mut dims = lf.dims();
    dims.c = c;
    Ok(inverse_branch_view(
        &BranchView::from_parts(branch, data),
        dims,
    )?)
}

/// Disentangling block.
///
/// Four branches see the same feature field through different foldings:
/// the spatial branch applies two 3x3 same convolutions per view, the
/// angular branch collapses the view grid with an AxA valid convolution
/// and re-expands it by pixel shuffle, and the two EPI branches do the
/// same along one angular axis of each EPI plane. Branch outputs are
/// concatenated on channels, fused by a pointwise convolution, and added
/// back to the input.
pub fn distg_block_forward(
    feat: &LightField,
    params: &NetParams,
    prefix: &str,
    cfg: &NetConfig,
) -> Result<LightField> {
    let dims = feat.dims();
    let a = cfg.ang_res;
    let c = cfg.channels;
    if dims.u != a || dims.v != a {
        return Err(DanetError::BadAngular {
            expected: a,
            got_u: dims.u,
            got_v: dims.v,
        });
    }
    if dims.c != c {
        return Err(DanetError::BadChannels {
            expected: c,
            got: dims.c,
        });
    }
    let c4 = c / 4;
    let w = |n: &str| params.conv(&format!("{prefix}.{n}.weight"));
    let b = |n: &str| params.vec1(&format!("{prefix}.{n}.bias"));

    // Spatial: per-view detail, plane (H, W).
    let sv = branch_view(feat, Branch::Spatial).into_data();
    let s1 = map_leaky(conv2d(&sv, &w("spa1")?, &b("spa1")?, Pad::Same)?);
    let s2 = map_leaky(conv2d(&s1, &w("spa2")?, &b("spa2")?, Pad::Same)?);
    let spa = unfold(Branch::Spatial, s2, feat, c)?;

    // Angular: the whole view grid at one pixel, plane (U, V).
    let av = branch_view(feat, Branch::Angular).into_data();
    let a1 = map_leaky(conv2d(&av, &w("ang_conv")?, &b("ang_conv")?, Pad::Valid)?);
    let a2 = conv2d(&a1, &w("ang_up")?, &b("ang_up")?, Pad::Valid)?;
    let a3 = pixel_shuffle_2d(&a2, a)?;
    let ang = unfold(Branch::Angular, a3, feat, c4)?;

    // EPI branches: full angular extent, one spatial axis, plane (V, W)
    // and (U, H); the Ax1 kernel collapses the angular axis and the 1D
    // shuffle restores it.
    let ev = branch_view(feat, Branch::EpiH).into_data();
    let e1 = map_leaky(conv2d(&ev, &w("epih_conv")?, &b("epih_conv")?, Pad::Valid)?);
    let e2 = conv2d(&e1, &w("epih_up")?, &b("epih_up")?, Pad::Valid)?;
    let e3 = pixel_shuffle_1d(&e2, a, ShuffleAxis::P)?;
    let epih = unfold(Branch::EpiH, e3, feat, c4)?;

    let fv = branch_view(feat, Branch::EpiV).into_data();
    let f1 = map_leaky(conv2d(&fv, &w("epiv_conv")?, &b("epiv_conv")?, Pad::Valid)?);
    let f2 = conv2d(&f1, &w("epiv_up")?, &b("epiv_up")?, Pad::Valid)?;
    let f3 = pixel_shuffle_1d(&f2, a, ShuffleAxis::P)?;
    let epiv = unfold(Branch::EpiV, f3, feat, c4)?;

    // Fuse in concatenation order spatial, angular, epi-h, epi-v.
    let cat = ndarray::concatenate(
        Axis(4),
        &[
            spa.data().view(),
            ang.data().view(),
            epih.data().view(),
            epiv.data().view(),
        ],
    )
    .expect("branch outputs share the light-field axes");
    let cat_lf = LightField::new(cat)?;
    let cv = branch_view(&cat_lf, Branch::Spatial).into_data();
    let fused = conv2d(&cv, &w("fuse")?, &b("fuse")?, Pad::Valid)?;
    let fused_lf = unfold(Branch::Spatial, fused, feat, c)?;

    Ok(LightField::new(feat.data() + fused_lf.data())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{init_params, NetParams};
    use lfd_degrade::NoiseStream;
    use ndarray::{Array5, ArrayD};

    fn micro_config() -> NetConfig {
        NetConfig {
            ang_res: 2,
            channels: 8,
            n_groups: 1,
            blocks_per_group: 1,
            kpe_widths: vec![441, 8, 15],
            kgen_hidden: 8,
            ca_hidden: 8,
            ..NetConfig::default()
        }
    }

    fn random_field(dims: (usize, usize, usize, usize, usize), seed: u64) -> LightField {
        let stream = NoiseStream::new(seed, 0, 0);
        let n = dims.0 * dims.1 * dims.2 * dims.3 * dims.4;
        LightField::new(
            Array5::from_shape_vec(
                dims,
                (0..n).map(|i| stream.unit_open(i as u64) - 0.5).collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    /// Direct 5D evaluation of the block, indexing the light field
    /// without branch foldings or the shared convolution helper.
    fn oracle_forward(
        feat: &LightField,
        params: &NetParams,
        prefix: &str,
        cfg: &NetConfig,
    ) -> Array5<f64> {
        let a = cfg.ang_res;
        let c = cfg.channels;
        let c4 = c / 4;
        let d = feat.dims();
        let x = feat.data();
        let w = |n: &str| params.conv(&format!("{prefix}.{n}.weight")).unwrap();
        let b = |n: &str| params.vec1(&format!("{prefix}.{n}.bias")).unwrap();
        let lr = |t: f64| if t > 0.0 { t } else { 0.1 * t };

        // Spatial: two zero-padded 3x3 per view.
        let conv_spa = |src: &Array5<f64>, wt: &Array4<f64>, bs: &ndarray::Array1<f64>| {
            let mut out = Array5::zeros((d.u, d.v, d.h, d.w, c));
            for u in 0..d.u {
                for v in 0..d.v {
                    for y in 0..d.h {
                        for xx in 0..d.w {
                            for co in 0..c {
                                let mut acc = bs[co];
                                for ci in 0..c {
                                    for ky in 0..3usize {
                                        for kx in 0..3usize {
                                            let sy = y as isize + ky as isize - 1;
                                            let sx = xx as isize + kx as isize - 1;
                                            if sy >= 0
                                                && sy < d.h as isize
                                                && sx >= 0
                                                && sx < d.w as isize
                                            {
                                                acc += wt[[co, ci, ky, kx]]
                                                    * src[[u, v, sy as usize, sx as usize, ci]];
                                            }
                                        }
                                    }
                                }
                                out[[u, v, y, xx, co]] = lr(acc);
                            }
                        }
                    }
                }
            }
            out
        };
        let spa = conv_spa(&conv_spa(x, &w("spa1"), &b("spa1")), &w("spa2"), &b("spa2"));

        // Angular: AxA valid over the view grid at each pixel, pointwise
        // expansion, 2D shuffle back to an AxA grid.
        let (aw, ab) = (w("ang_conv"), b("ang_conv"));
        let (uw, ub) = (w("ang_up"), b("ang_up"));
        let mut ang = Array5::zeros((d.u, d.v, d.h, d.w, c4));
        for y in 0..d.h {
            for xx in 0..d.w {
                let mut mid = vec![0.0; c4];
                for (co, item) in mid.iter_mut().enumerate() {
                    let mut acc = ab[co];
                    for ci in 0..c {
                        for uu in 0..a {
                            for vv in 0..a {
                                acc += aw[[co, ci, uu, vv]] * x[[uu, vv, y, xx, ci]];
                            }
                        }
                    }
                    *item = lr(acc);
                }
                let mut up = vec![0.0; a * a * c4];
                for (co, item) in up.iter_mut().enumerate() {
                    let mut acc = ub[co];
                    for (ci, m) in mid.iter().enumerate() {
                        acc += uw[[co, ci, 0, 0]] * m;
                    }
                    *item = acc;
                }
                // shuffle: channel co = cc*a*a + i*a + j lands at view (i, j)
                for cc in 0..c4 {
                    for i in 0..a {
                        for j in 0..a {
                            ang[[i, j, y, xx, cc]] = up[cc * a * a + i * a + j];
                        }
                    }
                }
            }
        }

        // EPI-h: at fixed (h, u), collapse v with an Ax1 kernel over the
        // (V, W) plane, expand, 1D shuffle along v.
        let (ehw, ehb) = (w("epih_conv"), b("epih_conv"));
        let (ehuw, ehub) = (w("epih_up"), b("epih_up"));
        let mut epih = Array5::zeros((d.u, d.v, d.h, d.w, c4));
        for fh in 0..d.h {
            for fu in 0..d.u {
                for xx in 0..d.w {
                    let mut mid = vec![0.0; c4];
                    for (co, item) in mid.iter_mut().enumerate() {
                        let mut acc = ehb[co];
                        for ci in 0..c {
                            for vv in 0..a {
                                acc += ehw[[co, ci, vv, 0]] * x[[fu, vv, fh, xx, ci]];
                            }
                        }
                        *item = lr(acc);
                    }
                    let mut up = vec![0.0; a * c4];
                    for (co, item) in up.iter_mut().enumerate() {
                        let mut acc = ehub[co];
                        for (ci, m) in mid.iter().enumerate() {
                            acc += ehuw[[co, ci, 0, 0]] * m;
                        }
                        *item = acc;
                    }
                    for cc in 0..c4 {
                        for vv in 0..a {
                            epih[[fu, vv, fh, xx, cc]] = up[cc * a + vv];
                        }
                    }
                }
            }
        }

        // EPI-v: at fixed (w, v), collapse u over the (U, H) plane.
        let (evw, evb) = (w("epiv_conv"), b("epiv_conv"));
        let (evuw, evub) = (w("epiv_up"), b("epiv_up"));
        let mut epiv = Array5::zeros((d.u, d.v, d.h, d.w, c4));
        for fw in 0..d.w {
            for fv in 0..d.v {
                for y in 0..d.h {
                    let mut mid = vec![0.0; c4];
                    for (co, item) in mid.iter_mut().enumerate() {
                        let mut acc = evb[co];
                        for ci in 0..c {
                            for uu in 0..a {
                                acc += evw[[co, ci, uu, 0]] * x[[uu, fv, y, fw, ci]];
                            }
                        }
                        *item = lr(acc);
                    }
                    let mut up = vec![0.0; a * c4];
                    for (co, item) in up.iter_mut().enumerate() {
                        let mut acc = evub[co];
                        for (ci, m) in mid.iter().enumerate() {
                            acc += evuw[[co, ci, 0, 0]] * m;
                        }
                        *item = acc;
                    }
                    for cc in 0..c4 {
                        for uu in 0..a {
                            epiv[[uu, fv, y, fw, cc]] = up[cc * a + uu];
                        }
                    }
                }
            }
        }

        // Fuse concat [spa | ang | epih | epiv] pointwise, add input.
        let (fw_, fb) = (w("fuse"), b("fuse"));
        let mut out = x.clone();
        for u in 0..d.u {
            for v in 0..d.v {
                for y in 0..d.h {
                    for xx in 0..d.w {
                        for co in 0..c {
                            let mut acc = fb[co];
                            for ci in 0..c {
                                acc += fw_[[co, ci, 0, 0]] * spa[[u, v, y, xx, ci]];
                            }
                            for ci in 0..c4 {
                                acc += fw_[[co, c + ci, 0, 0]] * ang[[u, v, y, xx, ci]];
                                acc += fw_[[co, c + c4 + ci, 0, 0]] * epih[[u, v, y, xx, ci]];
                                acc += fw_[[co, c + 2 * c4 + ci, 0, 0]] * epiv[[u, v, y, xx, ci]];
                            }
                            out[[u, v, y, xx, co]] += acc;
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn matches_the_direct_5d_oracle() {
        let cfg = micro_config();
        let params = init_params(55, &cfg).unwrap();
        for inst in 0..3 {
            let feat = random_field((2, 2, 4, 5, 8), 300 + inst);
            let got = distg_block_forward(&feat, &params, "group1.distg1", &cfg).unwrap();
            let want = oracle_forward(&feat, &params, "group1.distg1", &cfg);
            for (g, w) in got.data().iter().zip(want.iter()) {
                assert!((g - w).abs() <= 1e-12, "{g} vs {w}");
            }
        }
    }

    #[test]
    fn zero_params_reduce_to_the_residual_identity() {
        let cfg = micro_config();
        let params = NetParams::zeros(&cfg).unwrap();
        let feat = random_field((2, 2, 5, 4, 8), 12);
        let out = distg_block_forward(&feat, &params, "group1.distg1", &cfg).unwrap();
        assert_eq!(out.data(), feat.data());
    }

    #[test]
    fn output_shape_equals_input_shape() {
        let cfg = micro_config();
        let params = init_params(1, &cfg).unwrap();
        let feat = random_field((2, 2, 6, 7, 8), 13);
        let out = distg_block_forward(&feat, &params, "group1.distg1", &cfg).unwrap();
        assert_eq!(out.dims(), feat.dims());
    }

    fn zero_branch(params: &mut NetParams, prefix: &str, names: &[&str]) {
        for n in names {
            let w = params.get(&format!("{prefix}.{n}.weight")).unwrap().clone();
            params.insert(
                &format!("{prefix}.{n}.weight"),
                ArrayD::zeros(w.raw_dim()),
            );
            let b = params.get(&format!("{prefix}.{n}.bias")).unwrap().clone();
            params.insert(&format!("{prefix}.{n}.bias"), ArrayD::zeros(b.raw_dim()));
        }
    }

    /// Support of the output delta after bumping one input sample, with
    /// all branches but one silenced.
    fn delta_support(
        active: &[&str],
        bump: (usize, usize, usize, usize, usize),
    ) -> Vec<(usize, usize, usize, usize)> {
        let cfg = micro_config();
        let prefix = "group1.distg1";
        let mut params = init_params(99, &cfg).unwrap();
        let all = [
            "spa1", "spa2", "ang_conv", "ang_up", "epih_conv", "epih_up", "epiv_conv", "epiv_up",
        ];
        let silenced: Vec<&str> = all.iter().copied().filter(|n| !active.contains(n)).collect();
        zero_branch(&mut params, prefix, &silenced);

        let base = random_field((2, 2, 4, 4, 8), 500);
        let out0 = distg_block_forward(&base, &params, prefix, &cfg).unwrap();
        let mut bumped = base.data().clone();
        bumped[[bump.0, bump.1, bump.2, bump.3, bump.4]] += 0.5;
        let bumped = LightField::new(bumped).unwrap();
        let out1 = distg_block_forward(&bumped, &params, prefix, &cfg).unwrap();

        let delta = out1.data() - out0.data();
        let mut support = Vec::new();
        for u in 0..2 {
            for v in 0..2 {
                for y in 0..4 {
                    for x in 0..4 {
                        let hit = (0..8).any(|c| delta[[u, v, y, x, c]].abs() > 1e-14);
                        if hit {
                            support.push((u, v, y, x));
                        }
                    }
                }
            }
        }
        support
    }

    #[test]
    fn angular_branch_reaches_all_views_at_one_pixel() {
        let support = delta_support(&["ang_conv", "ang_up"], (0, 1, 2, 3, 4));
        let want: Vec<_> = (0..2)
            .flat_map(|u| (0..2).map(move |v| (u, v, 2, 3)))
            .collect();
        assert_eq!(support, want);
    }

    #[test]
    fn epih_branch_mixes_only_along_v() {
        let support = delta_support(&["epih_conv", "epih_up"], (1, 0, 2, 3, 4));
        let want: Vec<_> = (0..2).map(|v| (1, v, 2, 3)).collect();
        assert_eq!(support, want);
    }

    #[test]
    fn epiv_branch_mixes_only_along_u() {
        let support = delta_support(&["epiv_conv", "epiv_up"], (1, 0, 2, 3, 4));
        let want: Vec<_> = (0..2).map(|u| (u, 0, 2, 3)).collect();
        assert_eq!(support, want);
    }

    #[test]
    fn spatial_branch_stays_inside_its_view() {
        let support = delta_support(&["spa1", "spa2"], (1, 0, 2, 2, 4));
        assert!(!support.is_empty());
        for (u, v, y, x) in support {
            assert_eq!((u, v), (1, 0));
            // two 3x3 convolutions reach at most two pixels away
            assert!(y.abs_diff(2) <= 2 && x.abs_diff(2) <= 2);
        }
    }

    #[test]
    fn wrong_angular_size_is_rejected() {
        let cfg = micro_config();
        let params = NetParams::zeros(&cfg).unwrap();
        let feat = random_field((3, 3, 4, 4, 8), 7);
        assert!(matches!(
            distg_block_forward(&feat, &params, "group1.distg1", &cfg),
            Err(DanetError::BadAngular { .. })
        ));
    }

    #[test]
    fn wrong_channel_count_is_rejected() {
        let cfg = micro_config();
        let params = NetParams::zeros(&cfg).unwrap();
        let feat = random_field((2, 2, 4, 4, 4), 7);
        assert!(matches!(
            distg_block_forward(&feat, &params, "group1.distg1", &cfg),
            Err(DanetError::BadChannels { .. })
        ));
    }
}
