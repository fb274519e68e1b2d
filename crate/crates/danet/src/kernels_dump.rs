use lfd_degrade::Degradation;
use ndarray::Array2;

use crate::dablock::block_kernels;
use crate::{kpe_forward, DanetError, NetConfig, NetParams, Result};

/// Gap between tiles and cells, in pixels; rendered white.
const GAP: usize = 2;

/// Renders the generated per-channel kernels of every adaptive block as
/// one grayscale image in `[0, 1]`.
///
/// Rows are the blocks in group order, columns the given degradations.
/// Each cell tiles the C kernels of that block and normalizes the cell
/// to full range; an all-equal cell renders mid-gray.
pub fn dump_da_kernels(
    params: &NetParams,
    cfg: &NetConfig,
    inputs: &[Degradation],
) -> Result<Array2<f64>> {
    cfg.validate()?;
    if inputs.is_empty() {
        return Err(DanetError::BadConfig {
            reason: "kernel dump needs at least one degradation".to_string(),
        });
    }
    let c = cfg.channels;
    let k = cfg.da_kernel;
    let tiles = (c as f64).sqrt().ceil() as usize;
    let cell = tiles * (k + 1) - 1;

    let rows = cfg.n_groups;
    let cols = inputs.len();
    let height = rows * cell + (rows - 1) * GAP;
    let width = cols * cell + (cols - 1) * GAP;
    let mut img = Array2::from_elem((height, width), 1.0);

    for (col, d) in inputs.iter().enumerate() {
        let v_dg = kpe_forward(d, params, cfg)?;
        for g in 1..=rows {
            let kern = block_kernels(&v_dg, params, &format!("group{g}.dablock"), cfg)?;
            let lo = kern.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = kern.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let span = hi - lo;

            let y0 = (g - 1) * (cell + GAP);
            let x0 = col * (cell + GAP);
            // Blank the cell so tiles beyond C render as background.
            for y in 0..cell {
                for x in 0..cell {
                    img[[y0 + y, x0 + x]] = 0.0;
                }
            }
            for ci in 0..c {
                let ty = ci / tiles;
                let tx = ci % tiles;
                for i in 0..k {
                    for j in 0..k {
                        let v = if span > 0.0 {
                            (kern[[ci, i, j]] - lo) / span
                        } else {
                            0.5
                        };
                        img[[y0 + ty * (k + 1) + i, x0 + tx * (k + 1) + j]] = v;
                    }
                }
            }
        }
    }
    Ok(img)
}
