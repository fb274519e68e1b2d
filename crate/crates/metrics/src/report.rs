use lfd_core::LightField;

use crate::sum::exact_sum;
use crate::{psnr, ssim, MetricsError, Result, PSNR_CAP_DB};

#[derive(Debug, Clone, PartialEq)]
pub struct ViewScore {
    pub scene: String,
    pub u: usize,
    pub v: usize,
    pub psnr_db: f64,
    pub ssim: f64,
    /// True when the PSNR sentinel cap was applied.
    pub capped: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneScore {
    pub scene: String,
    pub psnr_db: f64,
    pub ssim: f64,
}

/// Three-level scores: per view, per scene (mean over its views), and the
/// dataset value (mean over scene means, not over pooled views).
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub dataset: String,
    pub per_view: Vec<ViewScore>,
    pub per_scene: Vec<SceneScore>,
    pub psnr_db: f64,
    pub ssim: f64,
}

impl MetricReport {
    /// CSV with one row per view, one aggregate row per scene (empty u, v
    /// fields), and a final dataset row (empty scene field); 4 decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dataset,scene,u,v,psnr,ssim\n");
        for view in &self.per_view {
            out.push_str(&format!(
                "{},{},{},{},{:.4},{:.4}\n",
                self.dataset, view.scene, view.u, view.v, view.psnr_db, view.ssim
            ));
        }
        for scene in &self.per_scene {
            out.push_str(&format!(
                "{},{},,,{:.4},{:.4}\n",
                self.dataset, scene.scene, scene.psnr_db, scene.ssim
            ));
        }
        out.push_str(&format!(
            "{},,,,{:.4},{:.4}\n",
            self.dataset, self.psnr_db, self.ssim
        ));
        out
    }
}

/// Scores `pred` against `gt` scene by scene. Scenes are matched by name
/// in `gt` order; predictions without a ground-truth partner are ignored.
pub fn dataset_score(
    dataset: &str,
    pred: &[(String, LightField)],
    gt: &[(String, LightField)],
) -> Result<MetricReport> {
    if gt.is_empty() {
        return Err(MetricsError::Empty);
    }
    let mut per_view = Vec::new();
    let mut per_scene = Vec::new();
    for (name, gt_lf) in gt {
        let (_, pred_lf) = pred
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| MetricsError::MissingScene { name: name.clone() })?;
        let dims = gt_lf.dims();
        let mut scene_psnr = Vec::new();
        let mut scene_ssim = Vec::new();
        for u in 0..dims.u {
            for v in 0..dims.v {
                let g = gt_lf.view_image(u, v)?;
                let p = pred_lf.view_image(u, v)?;
                let psnr_db = psnr(&p, &g)?;
                let s = ssim(&p, &g)?;
                scene_psnr.push(psnr_db);
                scene_ssim.push(s);
                per_view.push(ViewScore {
                    scene: name.clone(),
                    u,
                    v,
                    psnr_db,
                    ssim: s,
                    capped: psnr_db == PSNR_CAP_DB,
                });
            }
        }
        let n = scene_psnr.len() as f64;
        per_scene.push(SceneScore {
            scene: name.clone(),
            psnr_db: exact_sum(scene_psnr) / n,
            ssim: exact_sum(scene_ssim) / n,
        });
    }
    let m = per_scene.len() as f64;
    let psnr_db = exact_sum(per_scene.iter().map(|s| s.psnr_db)) / m;
    let ssim = exact_sum(per_scene.iter().map(|s| s.ssim)) / m;
    Ok(MetricReport {
        dataset: dataset.to_string(),
        per_view,
        per_scene,
        psnr_db,
        ssim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array5;

    fn constant_lf(u: usize, v: usize, value: f64) -> LightField {
        LightField::new(Array5::from_elem((u, v, 12, 12, 3), value)).unwrap()
    }

    fn shifted_lf(gt: &LightField, per_view_shift: &[f64]) -> LightField {
        let dims = gt.dims();
        let mut views = Vec::new();
        for u in 0..dims.u {
            for v in 0..dims.v {
                let img = gt.view_image(u, v).unwrap() + per_view_shift[u * dims.v + v];
                views.push(img);
            }
        }
        LightField::from_views(dims.u, dims.v, &views).unwrap()
    }

    #[test]
    fn perfect_prediction_hits_cap_and_one() {
        let gt = vec![("a".to_string(), constant_lf(1, 2, 0.4))];
        let report = dataset_score("demo", &gt, &gt).unwrap();
        assert_eq!(report.psnr_db, PSNR_CAP_DB);
        assert!((report.ssim - 1.0).abs() <= 1e-12);
        assert!(report.per_view.iter().all(|v| v.capped));
    }

    #[test]
    fn dataset_value_is_the_scene_mean_not_the_pooled_mean() {
        // Scene "one" has a single view at 20 dB; scene "three" has three
        // views at 30 dB each. Scene-mean = 25, pooled = 27.5.
        let gt = vec![
            ("one".to_string(), constant_lf(1, 1, 0.3)),
            ("three".to_string(), constant_lf(1, 3, 0.3)),
        ];
        let pred = vec![
            ("one".to_string(), shifted_lf(&gt[0].1, &[0.1])),
            (
                "three".to_string(),
                shifted_lf(&gt[1].1, &[10f64.powf(-1.5); 3]),
            ),
        ];
        let report = dataset_score("demo", &pred, &gt).unwrap();
        assert!((report.per_scene[0].psnr_db - 20.0).abs() <= 1e-9);
        assert!((report.per_scene[1].psnr_db - 30.0).abs() <= 1e-9);
        assert!((report.psnr_db - 25.0).abs() <= 1e-9);
        let pooled =
            exact_sum(report.per_view.iter().map(|v| v.psnr_db)) / report.per_view.len() as f64;
        assert!((pooled - 27.5).abs() <= 1e-9);
    }

    #[test]
    fn missing_scene_is_an_error() {
        let gt = vec![("a".to_string(), constant_lf(1, 1, 0.5))];
        let pred = vec![("b".to_string(), constant_lf(1, 1, 0.5))];
        assert!(matches!(
            dataset_score("demo", &pred, &gt),
            Err(MetricsError::MissingScene { .. })
        ));
    }

    #[test]
    fn csv_layout_is_stable() {
        let gt = vec![("s".to_string(), constant_lf(1, 2, 0.0))];
        let mut pred_views = vec![
            gt[0].1.view_image(0, 0).unwrap(),
            gt[0].1.view_image(0, 1).unwrap() + 0.5,
        ];
        pred_views[0] += 0.0;
        let pred = vec![(
            "s".to_string(),
            LightField::from_views(1, 2, &pred_views).unwrap(),
        )];
        let report = dataset_score("demo", &pred, &gt).unwrap();
        let psnr1 = report.per_view[1].psnr_db;
        let ssim1 = report.per_view[1].ssim;
        let expect = format!(
            "dataset,scene,u,v,psnr,ssim\n\
             demo,s,0,0,100.0000,1.0000\n\
             demo,s,0,1,{psnr1:.4},{ssim1:.4}\n\
             demo,s,,,{:.4},{:.4}\n\
             demo,,,,{:.4},{:.4}\n",
            report.per_scene[0].psnr_db, report.per_scene[0].ssim, report.psnr_db, report.ssim
        );
        assert_eq!(report.to_csv(), expect);
        assert!((psnr1 - 6.0206).abs() <= 5e-5);
    }
}
