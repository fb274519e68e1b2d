use lfd_core::LightField;
use lfd_degrade::Degradation;
use lfd_metrics::psnr;
use lfd_pipeline::{augment_lf, patchify, AugCode};
use ndarray::Array5;
use proptest::prelude::*;

fn square_lf(salt: u64) -> LightField {
    LightField::new(Array5::from_shape_fn((3, 3, 12, 12, 3), |(u, v, y, x, c)| {
        let t = (u * 501 + v * 301 + y * 37 + x * 17 + c * 7) as f64;
        0.5 + 0.49 * (t * 0.13 + salt as f64 * 0.618).sin()
    }))
    .unwrap()
}

#[test]
fn psnr_is_bitwise_invariant_under_every_code() {
    let a = square_lf(1);
    let b = square_lf(2);
    let mut reference = Vec::new();
    for u in 0..3 {
        for v in 0..3 {
            reference.push(
                psnr(&a.view_image(u, v).unwrap(), &b.view_image(u, v).unwrap())
                    .unwrap()
                    .to_bits(),
            );
        }
    }
    reference.sort_unstable();
    for code in 0..AugCode::COUNT {
        let c = AugCode::new(code).unwrap();
        let aa = augment_lf(&a, c).unwrap();
        let bb = augment_lf(&b, c).unwrap();
        let mut scores = Vec::new();
        for u in 0..3 {
            for v in 0..3 {
                scores.push(
                    psnr(&aa.view_image(u, v).unwrap(), &bb.view_image(u, v).unwrap())
                        .unwrap()
                        .to_bits(),
                );
            }
        }
        scores.sort_unstable();
        assert_eq!(scores, reference, "code {code}");
    }
}

#[test]
fn whole_lf_psnr_is_also_invariant() {
    let a = square_lf(3);
    let b = square_lf(4);
    let flat = |lf: &LightField| {
        ndarray::Array3::from_shape_vec(
            (1, lf.data().len(), 1),
            lf.data().iter().copied().collect(),
        )
        .unwrap()
    };
    let base = psnr(&flat(&a), &flat(&b)).unwrap().to_bits();
    for code in [1u8, 6, 7, 12, 47] {
        let c = AugCode::new(code).unwrap();
        let aa = augment_lf(&a, c).unwrap();
        let bb = augment_lf(&b, c).unwrap();
        assert_eq!(psnr(&flat(&aa), &flat(&bb)).unwrap().to_bits(), base);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn augmentation_never_changes_the_value_multiset(code in 0u8..48, salt in any::<u64>()) {
        let lf = square_lf(salt);
        let out = augment_lf(&lf, AugCode::new(code).unwrap()).unwrap();
        let mut a: Vec<u64> = lf.data().iter().map(|v| v.to_bits()).collect();
        let mut b: Vec<u64> = out.data().iter().map(|v| v.to_bits()).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn patchify_consumes_the_full_stride_grid() {
    let hr = LightField::new(Array5::from_shape_fn(
        (1, 1, 216, 184, 3),
        |(_, _, y, x, c)| ((y * 184 + x + c) % 251) as f64 / 251.0,
    ))
    .unwrap();
    let d = Degradation::new(0.5, 0.0, 4).unwrap();
    let pairs = patchify("grid", &hr, &d, 1).unwrap();
    assert_eq!(pairs.len(), 3 * 2);
    let max_y = pairs.iter().map(|p| p.y0).max().unwrap();
    let max_x = pairs.iter().map(|p| p.x0).max().unwrap();
    assert_eq!(max_y + 152, 216);
    assert_eq!(max_x + 152, 184);
}
