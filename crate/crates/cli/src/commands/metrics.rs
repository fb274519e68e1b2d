use lfd_metrics::dataset_score;

use crate::args::MetricsArgs;
use crate::common::load_scenes;
use crate::errors::{CliError, Result};

pub fn run(args: &MetricsArgs) -> Result<()> {
    let gt = load_scenes(&args.gt)?;
    let pred = load_scenes(&args.pred)?;
    let dataset = args
        .gt
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());
    let report = dataset_score(&dataset, &pred, &gt)?;
    if let Some(csv) = &args.csv {
        std::fs::write(csv, report.to_csv())
            .map_err(|e| CliError::io(format!("csv {}: {e}", csv.display())))?;
    }
    println!("PSNR/SSIM: {:.2}/{:.3}", report.psnr_db, report.ssim);
    Ok(())
}
