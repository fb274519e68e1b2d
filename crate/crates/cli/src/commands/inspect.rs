use lfd_danet::{
    count_params, dump_da_kernels, estimate_flops, NetConfig, PUBLISHED_FLOPS, PUBLISHED_PARAMS,
};
use lfd_degrade::Degradation;

use crate::args::{InspectArgs, InspectCmd};
use crate::common::resolve_params;
use crate::errors::{CliError, Result};

fn delta_pct(actual: f64, published: f64) -> f64 {
    (actual - published) / published * 100.0
}

pub fn run(args: &InspectArgs, seed: u64, cfg: &NetConfig) -> Result<()> {
    match &args.what {
        InspectCmd::Count => {
            // A container given on the command line is still opened and
            // checked, so a stale file fails here rather than at first use.
            if args.params.params.is_some() || args.params.init_params.is_some() {
                resolve_params(&args.params, seed, cfg)?;
            }
            let report = count_params(cfg)?;
            println!("total parameters: {}", report.total);
            for (module, n) in &report.by_module {
                println!("  {module:<14} {n:>12}");
            }
            println!("published reference: {}", PUBLISHED_PARAMS as u64);
            println!("delta: {:+.2}%", delta_pct(report.total as f64, PUBLISHED_PARAMS));
        }
        InspectCmd::Flops { height, width } => {
            if args.params.params.is_some() || args.params.init_params.is_some() {
                resolve_params(&args.params, seed, cfg)?;
            }
            let report = estimate_flops(cfg, *height, *width)?;
            println!(
                "MACs at {}x{}x{height}x{width}: {}",
                cfg.ang_res, cfg.ang_res, report.macs
            );
            for (module, n) in &report.by_module {
                println!("  {module:<14} {n:>16}");
            }
            println!("FLOPs at 2 per MAC: {}", report.flops_doubled);
            println!("published reference: {}", PUBLISHED_FLOPS as u64);
            println!("delta: {:+.2}%", delta_pct(report.macs as f64, PUBLISHED_FLOPS));
        }
        InspectCmd::Kernels { out, sigmas, noise } => {
            let params = resolve_params(&args.params, seed, cfg)?;
            let mut inputs = Vec::new();
            for part in sigmas.split(',') {
                let s: f64 = part.trim().parse().map_err(|_| {
                    CliError::invalid(format!("--sigmas has a non-numeric field {part:?}"))
                })?;
                inputs.push(Degradation::new(s, *noise, cfg.alpha)?);
            }
            let sheet = dump_da_kernels(&params, cfg, &inputs)?;
            let (h, w) = (sheet.nrows(), sheet.ncols());
            let img = image::GrayImage::from_fn(w as u32, h as u32, |x, y| {
                let v = sheet[[y as usize, x as usize]];
                image::Luma([(v.clamp(0.0, 1.0) * 255.0).round() as u8])
            });
            img.save_with_format(out, image::ImageFormat::Png)?;
            println!("kernel sheet {}x{} written to {}", h, w, out.display());
        }
    }
    Ok(())
}
