use lfd_core::LightField;
use lfd_danet::{network_forward, NetConfig, NetParams};
use lfd_degrade::{degrade_lf, Degradation};
use lfd_metrics::{exact_sum, psnr};
use rayon::prelude::*;

use crate::args::GridArgs;
use crate::common::{load_scenes, resolve_params, scene_seed};
use crate::errors::{CliError, Result};

const DEFAULT_SPEC: &str = "0:3:0.3,0:50:5";

#[derive(Debug, Clone, Copy)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    fn validate(&self, axis: &str) -> Result<()> {
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(CliError::invalid(format!("grid spec: {axis} step must be > 0")));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start <= self.stop) {
            return Err(CliError::invalid(format!("grid spec: {axis} start must be <= stop")));
        }
        if self.start < 0.0 {
            return Err(CliError::invalid(format!("grid spec: {axis} start must be >= 0")));
        }
        Ok(())
    }

    // Tolerates stop values that land a hair short of an exact multiple.
    fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

fn parse_axis(text: &str, axis: &str) -> Result<Range> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::invalid(format!(
            "grid spec: {axis} range must be START:STOP:STEP, got {text:?}"
        )));
    }
    let mut nums = [0.0f64; 3];
    for (slot, part) in nums.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| {
            CliError::invalid(format!("grid spec: {axis} range has a non-numeric field {part:?}"))
        })?;
    }
    let range = Range { start: nums[0], stop: nums[1], step: nums[2] };
    range.validate(axis)?;
    Ok(range)
}

pub fn parse_spec(text: &str) -> Result<(Range, Range)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::invalid(format!(
            "grid spec must be B0:B1:BSTEP,N0:N1:NSTEP, got {text:?}"
        )));
    }
    Ok((parse_axis(parts[0], "sigma_b")?, parse_axis(parts[1], "noise")?))
}

/// View-mean PSNR for one scene, the middle level of the scoring protocol.
fn scene_psnr(pred: &LightField, gt: &LightField) -> Result<f64> {
    let dims = gt.dims();
    let mut views = Vec::with_capacity(dims.u * dims.v);
    for u in 0..dims.u {
        for v in 0..dims.v {
            views.push(psnr(&pred.view_image(u, v)?, &gt.view_image(u, v)?)?);
        }
    }
    let n = views.len() as f64;
    Ok(exact_sum(views) / n)
}

fn cell_psnr(
    lr: &[(String, LightField)],
    gt: &[(String, LightField)],
    d_in: &Degradation,
    params: &NetParams,
    cfg: &NetConfig,
) -> Result<f64> {
    let mut scene_means = Vec::with_capacity(gt.len());
    for ((_, lo), (_, hi)) in lr.iter().zip(gt) {
        let sr = network_forward(lo, d_in, params, cfg)?;
        scene_means.push(scene_psnr(&sr, hi)?);
    }
    let n = scene_means.len() as f64;
    Ok(exact_sum(scene_means) / n)
}

pub fn run(args: &GridArgs, seed: u64, cfg: &NetConfig) -> Result<()> {
    let spec_text = args.spec.as_deref().unwrap_or(DEFAULT_SPEC);
    let (b_range, n_range) = parse_spec(spec_text)?;
    let b_vals = b_range.values();
    let n_vals = n_range.values();

    let gt_d = Degradation::new(args.gt_sigma, args.gt_noise, cfg.alpha)?;
    let params = resolve_params(&args.params, seed, cfg)?;

    let gt = load_scenes(&args.input)?;
    let mut lr = Vec::with_capacity(gt.len());
    for (name, hr) in &gt {
        let low = degrade_lf(hr, &gt_d, scene_seed(seed, name))?;
        lr.push((name.clone(), low));
    }

    let cells: Vec<(usize, usize)> = (0..b_vals.len())
        .flat_map(|bi| (0..n_vals.len()).map(move |nj| (bi, nj)))
        .collect();
    let scored: Vec<((usize, usize), f64)> = cells
        .par_iter()
        .map(|&(bi, nj)| {
            let d_in = Degradation::new(b_vals[bi], n_vals[nj], cfg.alpha)?;
            let v = cell_psnr(&lr, &gt, &d_in, &params, cfg)?;
            Ok(((bi, nj), v))
        })
        .collect::<Result<_>>()?;
    let mut matrix = vec![vec![0.0f64; n_vals.len()]; b_vals.len()];
    for ((bi, nj), v) in scored {
        matrix[bi][nj] = v;
    }

    let mut csv = String::from("b_in\\n_in");
    for n in &n_vals {
        csv.push_str(&format!(",{n:.4}"));
    }
    csv.push('\n');
    for (bi, b) in b_vals.iter().enumerate() {
        csv.push_str(&format!("{b:.4}"));
        for nj in 0..n_vals.len() {
            csv.push_str(&format!(",{:.4}", matrix[bi][nj]));
        }
        csv.push('\n');
    }
    std::fs::write(&args.csv, csv)
        .map_err(|e| CliError::io(format!("csv {}: {e}", args.csv.display())))?;
    println!("grid {}x{} written to {}", b_vals.len(), n_vals.len(), args.csv.display());
    Ok(())
}
