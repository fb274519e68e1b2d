//! Property tests over the structural identities that hold for every
//! input: zero parameters make each stage an identity or a pure bicubic
//! path, and output shapes follow the input deterministically.

use lfd_core::LightField;
use lfd_danet::{da_block_forward, distg_block_forward, network_forward, NetConfig, NetParams};
use lfd_degrade::Degradation;
use ndarray::{Array1, Array4, Array5};
use proptest::prelude::*;

fn micro_config(ang_res: usize) -> NetConfig {
    NetConfig {
        ang_res,
        channels: 8,
        n_groups: 1,
        blocks_per_group: 1,
        kpe_widths: vec![441, 8, 15],
        kgen_hidden: 8,
        ca_hidden: 8,
        ..NetConfig::default()
    }
}

prop_compose! {
    fn small_values(n: usize)(values in prop::collection::vec(-1.0f64..1.0, n)) -> Vec<f64> {
        values
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn zero_param_da_block_is_an_identity(
        b in 1usize..3,
        p in 1usize..7,
        q in 1usize..7,
        seed_values in small_values(16),
    ) {
        let cfg = micro_config(2);
        let params = NetParams::zeros(&cfg).unwrap();
        let n = b * 8 * p * q;
        let feat = Array4::from_shape_vec(
            (b, 8, p, q),
            (0..n).map(|i| ((i * 37 + 11) % 101) as f64 / 101.0 - 0.5).collect(),
        ).unwrap();
        let v = Array1::from_vec(seed_values);
        let out = da_block_forward(&feat, &v, &params, "group1.dablock", &cfg).unwrap();
        prop_assert_eq!(out, feat);
    }

    #[test]
    fn zero_param_distg_block_is_an_identity(
        h in 1usize..6,
        w in 1usize..6,
        offset in 0.0f64..1.0,
    ) {
        let cfg = micro_config(2);
        let params = NetParams::zeros(&cfg).unwrap();
        let n = 2 * 2 * h * w * 8;
        let feat = LightField::new(Array5::from_shape_vec(
            (2, 2, h, w, 8),
            (0..n).map(|i| (i as f64 * 0.043 + offset).sin() * 0.4).collect(),
        ).unwrap()).unwrap();
        let out = distg_block_forward(&feat, &params, "group1.distg1", &cfg).unwrap();
        prop_assert_eq!(out.data(), feat.data());
    }

    #[test]
    fn network_always_scales_by_alpha(
        ang in 2usize..4,
        h in 2usize..6,
        w in 2usize..6,
        sigma in 0.0f64..4.0,
        noise in 0.0f64..75.0,
    ) {
        let cfg = micro_config(ang);
        let params = NetParams::zeros(&cfg).unwrap();
        let d = Degradation::new(sigma, noise, 4).unwrap();
        let n = ang * ang * h * w * 3;
        let lr = LightField::new(Array5::from_shape_vec(
            (ang, ang, h, w, 3),
            (0..n).map(|i| ((i * 13 + 5) % 97) as f64 / 97.0).collect(),
        ).unwrap()).unwrap();
        let out = network_forward(&lr, &d, &params, &cfg).unwrap();
        let od = out.dims();
        prop_assert_eq!((od.u, od.v, od.h, od.w, od.c), (ang, ang, 4 * h, 4 * w, 3));
    }
}
