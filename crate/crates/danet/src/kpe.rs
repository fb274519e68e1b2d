use lfd_degrade::{gaussian_kernel, Degradation};
use ndarray::{s, Array1};

use crate::config::NOISE_MAX;
use crate::ops::{fc, map_leaky};
use crate::{NetConfig, NetParams, Result};

/// Kernel prior embedding.
///
/// The blur width enters the network through its realized kernel: the
/// 21x21 tap table for `sigma_b` is flattened row-major and pushed through
/// the fully connected stack, with a leaky rectifier between layers and
/// none after the last. The normalized noise level is appended, giving the
/// degradation representation consumed by every adaptive block.
pub fn kpe_forward(d: &Degradation, params: &NetParams, cfg: &NetConfig) -> Result<Array1<f64>> {
    cfg.validate()?;
    let kernel = gaussian_kernel(d.sigma_b)?;
    let flat: Vec<f64> = kernel.weights().iter().copied().collect();
    debug_assert_eq!(flat.len(), cfg.kpe_widths[0]);
    let mut x = Array1::from_vec(flat);

    let n_fc = cfg.kpe_widths.len() - 1;
    for i in 1..=n_fc {
        let w = params.mat(&format!("kpe.fc{i}.weight"))?;
        let b = params.vec1(&format!("kpe.fc{i}.bias"))?;
        x = fc(&w, &b, &x);
        if i < n_fc {
            x = map_leaky(x);
        }
    }

    let mut v = Array1::zeros(x.len() + 1);
    v.slice_mut(s![..x.len()]).assign(&x);
    v[x.len()] = d.noise_level / NOISE_MAX;
    Ok(v)
}
