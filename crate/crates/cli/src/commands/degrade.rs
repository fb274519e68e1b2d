use lfd_degrade::{degrade_lf, Degradation};
use lfd_pipeline::{save_scene, DegradationRecord};

use crate::args::DegradeArgs;
use crate::common::{load_scenes, scene_seed};
use crate::errors::Result;

pub fn run(args: &DegradeArgs, seed: u64) -> Result<()> {
    let d = Degradation::new(args.sigma, args.noise, args.alpha)?;
    let scenes = load_scenes(&args.input)?;
    for (name, hr) in &scenes {
        let s = scene_seed(seed, name);
        let lr = degrade_lf(hr, &d, s)?;
        let record = DegradationRecord {
            sigma_b: d.sigma_b,
            noise_level: d.noise_level,
            alpha: d.alpha,
            seed: s,
        };
        save_scene(&lr, name, &args.out.join(name), Some(record))?;
        println!("degraded {name}");
    }
    Ok(())
}
